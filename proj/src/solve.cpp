#include "datesat/solve.hpp"

namespace datesat {

SolveResult solve(const Problem& p, const SolveOptions& options) {
  EncodedInstance inst = encode(p, options.strategy, options.bounds, options.encode);
  SolveResult out;
  out.encode_ms = inst.encode_ms;
  smt::SolverSession session(*inst.session, options.solver);
  out.status = session.check(options.timeout_ms);
  out.time_ms = session.elapsed_ms();
  if (out.status == smt::Status::Sat) out.model = decode_model(inst, session.model());
  return out;
}

}  // namespace datesat
