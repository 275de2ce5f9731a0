#pragma once

#include "rpsdp/graph.hpp"
#include "rpsdp/sdp_problem.hpp"

#include <vector>

namespace rpsdp {

/// max <L, X> s.t. X_ii = 1. With quarter_scale the reported value is <L,X>/4.
SdpProblem maxcut_sdp(const Graph& g, bool quarter_scale = false);

/// Index 0 homogenizes. Each clause contributes (3 + s_i X_0i + s_j X_0j - s_i s_j X_ij)/4
/// (unit clauses (1 + s_i X_0i)/2). C = W collects the linear-in-X parts so that
/// <W, X>/4 plus report.offset is the expected number of satisfied clauses.
SdpProblem max2sat_sdp(const CnfFormula& f);

/// Feasibility problem: X_ii = 1 and s_i X_0i + s_j X_0j - s_i s_j X_ij = 1 per clause.
/// Unit clauses become s_i X_0i = 1; tautologies are skipped.
SdpProblem gap2sat_sdp(const CnfFormula& f);

/// Level-2 moment/SOS relaxation of the stable set problem over the monomial
/// basis {1} u {x_i} u {x_i x_j, i<j}, matrix size 1 + n + n(n-1)/2.
/// Stated in Gram (SOS) form: min <B_0, X> s.t. <B_S, X> = -[|S| = 1] for every
/// nonempty stable S with |S| <= 4, where B_S sums E_ab over monomial pairs with
/// a u b = S. Its optimum equals the moment bound max sum_i y_i by duality.
SdpProblem stable_set_lasserre2(const Graph& g);

/// Monomials of the level-2 basis in matrix order; entries are 0-based vertex lists.
std::vector<std::vector<Index>> lasserre2_monomials(Index n);

/// Rank-one lift [1; x][1; x]^T with x_i = +-1.
Eigen::MatrixXd assignment_lift(const std::vector<bool>& assignment);

}  // namespace rpsdp
