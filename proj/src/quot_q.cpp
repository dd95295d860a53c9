#include "quadeq/quot_q.hpp"

namespace quadeq {

bool is_representative(const Pi& g) { return g.s > 0 || (g.s == 0 && g.r > 0); }

QElement p_q(const Ring& P) {
    QElement out(P.eps(), P.domain());
    for (const auto& [g, c] : P.terms()) {
        if (g.is_identity()) continue;
        if (is_representative(g))
            out.add_term(g, c);
        else
            out.add_term(pi_inv(g), -c);
    }
    return out;
}

QElement q_nf_commutator(const std::vector<std::pair<Word, i64>>& left,
                         const std::vector<std::pair<Word, i64>>& right) {
    if (left.empty() && right.empty()) return QElement(1);
    int eps = (left.empty() ? right.front() : left.front()).first.basis().epsilon;
    Ring sum(eps);
    for (const auto& [u, n] : left)
        for (const auto& [v, m] : right) sum.add_term(pi_mul(pi_inv(project(u)), project(v)), n * m);
    return p_q(sum);
}

bool q_divisible_by_two(const QElement& X) {
    if (X.domain() != Domain::Integer) throw DomainMismatch("q_divisible_by_two needs integer coefficients");
    for (const auto& [g, c] : X.terms())
        if (c % 2 != 0) return false;
    return true;
}

}  // namespace quadeq
