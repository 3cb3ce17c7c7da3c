#ifndef LATENT_REPL_HPP_
#define LATENT_REPL_HPP_

#include <map>
#include <string>
#include <vector>

#include "latent/scenario.hpp"

namespace latent {

// Line-at-a-time interpreter over an immutable snapshot stack.
class Repl {
 public:
  explicit Repl(SignatureRef sig, RunOptions options = {});

  // Runs one command and returns what it prints. Errors are reported in the
  // output and leave the session unchanged.
  std::string execute(std::string_view line);
  bool finished() const { return finished_; }

  struct State {
    BeliefBase base;
    std::map<std::string, Evidence> evidence;
  };
  const State& state() const { return history_.back(); }

 private:
  std::string dispatch(std::string_view command, std::string_view rest);
  std::string change(EvidenceOp op, std::string_view name);
  void push(State next) { history_.push_back(std::move(next)); }
  const Signature& sig() const { return state().base.signature(); }

  std::vector<State> history_;
  RunOptions options_;
  Selector selector_;
  bool finished_ = false;
};

}  // namespace latent

#endif  // LATENT_REPL_HPP_
