#pragma once

#include <utility>
#include <vector>

#include "quadeq/grind.hpp"

namespace quadeq {

// Element of Q = Z[pi \ {1}] / (g + g^-1), or of Q' = Q (x) Z2. Keys are canonical representatives.
using QElement = Ring;

// One of {g, g^-1} is the representative: s > 0, or s = 0 and r > 0.
bool is_representative(const Pi& g);

QElement p_q(const Ring& P);

// Image of [prod B_{u_i}^{n_i}, prod B_{v_j}^{m_j}] under N_1 -> Q.
QElement q_nf_commutator(const std::vector<std::pair<Word, i64>>& left,
                         const std::vector<std::pair<Word, i64>>& right);

bool q_divisible_by_two(const QElement& X);

}  // namespace quadeq
