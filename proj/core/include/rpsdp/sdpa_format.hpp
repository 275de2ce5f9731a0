#pragma once

#include "rpsdp/sdp_problem.hpp"

#include <iosfwd>
#include <string>

namespace rpsdp {

/// Sparse SDPA-like text format. Grammar (tokens separated by whitespace,
/// '#' starts a comment that runs to end of line, indices 1-based, i <= j):
///
///   rpsdp-sdp 1
///   sense min|max
///   dim <n>
///   constraints <m>
///   objective <nnz>
///   <i> <j> <value>            (nnz lines)
///   constraint <idx> <b> <nnz>  (m blocks, idx = 1..m in order)
///   <i> <j> <value>
///   [bounds]                   (optional: m lines "<lb> <ub>")
///   [report <offset> <scale>]
///   end
///
/// Values are written with 17 significant digits so every double round-trips.
/// A constraint consisting of a single diagonal entry equal to 1 is read back
/// with the DiagonalUnit structure hint.
void write_sdpa(std::ostream& out, const SdpProblem& p);
SdpProblem read_sdpa(std::istream& in);

std::string to_sdpa_string(const SdpProblem& p);
SdpProblem from_sdpa_string(const std::string& text);

}  // namespace rpsdp
