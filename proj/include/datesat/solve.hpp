#pragma once

#include <optional>

#include "datesat/encoder.hpp"
#include "datesat/problem.hpp"
#include "datesat/smt/solver.hpp"
#include "datesat/value.hpp"

namespace datesat {

struct SolveOptions {
  Strategy strategy = Strategy::AlphaBetaTable;
  Bounds bounds;
  int timeout_ms = 60000;
  smt::SolverConfig solver = smt::SolverConfig::from_env();
  EncodeOptions encode;
};

struct SolveResult {
  smt::Status status = smt::Status::Unknown;
  std::optional<Assignment> model;  // set when status is Sat
  double time_ms = 0;               // backend check only
  double encode_ms = 0;
};

/// Encodes, checks and decodes. Throws EncodingError, IngestError,
/// WellFormednessError, smt::SolverError or DecodeError.
SolveResult solve(const Problem& p, const SolveOptions& options);

}  // namespace datesat
