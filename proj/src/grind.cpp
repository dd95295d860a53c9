#include "quadeq/grind.hpp"

#include <algorithm>
#include <cstdlib>

namespace quadeq {

namespace {

void require_compatible(const Ring& x, const Ring& y) {
    if (x.eps() != y.eps()) throw EpsilonMismatch("ring elements with different epsilon");
    if (x.domain() != y.domain()) throw DomainMismatch("ring elements with different coefficient domains");
}

}  // namespace

Ring Ring::single(const Pi& g, i64 c, Domain dom) {
    Ring r(g.eps, dom);
    r.add_term(g, c);
    return r;
}

i64 Ring::coeff(const Pi& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
}

void Ring::add_term(const Pi& g, i64 c) {
    if (g.eps != eps_) throw EpsilonMismatch("term with different epsilon");
    if (dom_ == Domain::Mod2) c = ((c % 2) + 2) % 2;
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (inserted) return;
    it->second += c;
    if (dom_ == Domain::Mod2) it->second %= 2;
    if (it->second == 0) terms_.erase(it);
}

Ring operator+(const Ring& x, const Ring& y) {
    require_compatible(x, y);
    Ring r = x;
    for (const auto& [g, c] : y.terms()) r.add_term(g, c);
    return r;
}

Ring operator-(const Ring& x) { return scalar_mul(-1, x); }

Ring operator-(const Ring& x, const Ring& y) { return x + (-y); }

Ring operator*(const Ring& x, const Ring& y) {
    require_compatible(x, y);
    Ring r(x.eps(), x.domain());
    for (const auto& [g, c] : x.terms())
        for (const auto& [h, d] : y.terms()) r.add_term(pi_mul(g, h), c * d);
    return r;
}

Ring scalar_mul(i64 c, const Ring& x) {
    Ring r(x.eps(), x.domain());
    for (const auto& [g, d] : x.terms()) r.add_term(g, c * d);
    return r;
}

Ring translate(const Pi& g, const Ring& x) { return Ring::single(g, 1, x.domain()) * x; }

i64 augmentation(const Ring& x) {
    i64 s = 0;
    for (const auto& [g, c] : x.terms()) s += c;
    return x.domain() == Domain::Mod2 ? s % 2 : s;
}

Ring reduce_mod2(const Ring& x) {
    Ring r(x.eps(), Domain::Mod2);
    for (const auto& [g, c] : x.terms()) r.add_term(g, c);
    return r;
}

i64 alpha_radius(const Ring& x) {
    i64 m = 0;
    for (const auto& [g, c] : x.terms()) m = std::max(m, std::abs(g.r));
    return m;
}

std::string to_string(const Ring& x) {
    std::string out = "{";
    bool first = true;
    for (const auto& [g, c] : x.terms()) {
        if (!first) out += ',';
        first = false;
        out += to_string(g) + ":" + std::to_string(c);
    }
    return out + "}";
}

Ring geom_ratio(const Pi& x, i64 a, i64 b) {
    if (b == 0 || a % b != 0) throw NotDivisible("geom_ratio: exponent " + std::to_string(b) + " does not divide " + std::to_string(a));
    if (a != 0 && x.is_identity()) throw NotDivisible("geom_ratio: base is the identity");
    Ring r(x.eps);
    i64 m = a / b;
    if (m >= 0) {
        for (i64 j = 0; j < m; ++j) r.add_term(pi_pow(x, j * b), 1);
    } else {
        for (i64 j = 0; j < -m; ++j) r.add_term(pi_pow(x, a + j * b), -1);
    }
    Ring lhs = r * (Ring::one(x.eps) - Ring::single(pi_pow(x, b)));
    if (!(lhs == Ring::one(x.eps) - Ring::single(pi_pow(x, a))))
        throw NotDivisible("geom_ratio: expansion failed verification");
    return r;
}

Ring alt_geom_ratio(const Pi& x, i64 two_d, i64 ell) {
    if (ell == 0 || two_d % ell != 0 || (two_d / ell) % 2 != 0)
        throw NotDivisible("alt_geom_ratio: " + std::to_string(ell) + " does not divide half of " + std::to_string(two_d));
    Ring r(x.eps);
    i64 k = two_d / ell;
    Pi y = pi_pow(x, ell);
    if (k >= 0) {
        for (i64 j = 0; j < k; ++j) r.add_term(pi_pow(y, j), j % 2 == 0 ? 1 : -1);
    } else {
        for (i64 j = 0; j < -k; ++j) r.add_term(pi_pow(y, k + j), j % 2 == 0 ? -1 : 1);
    }
    Ring lhs = r * (Ring::one(x.eps) + Ring::single(y));
    if (!(lhs == Ring::one(x.eps) - Ring::single(pi_pow(x, two_d))))
        throw NotDivisible("alt_geom_ratio: expansion failed verification");
    return r;
}

Ring fox_derivative(const Word& w, int gen) {
    int eps = w.basis().epsilon;
    Word a = w.basis().kind == Basis::Adapted ? w : change_basis(w, adapted(eps));
    Ring r(eps);
    Pi prefix = pi_identity(eps);
    for (const auto& s : a.syllables()) {
        Pi x = s.gen == 0 ? pi_alpha(eps) : pi_beta(eps);
        if (s.gen == gen) {
            if (s.exp > 0) {
                for (i64 j = 0; j < s.exp; ++j) r.add_term(pi_mul(prefix, pi_pow(x, j)), 1);
            } else {
                for (i64 j = 1; j <= -s.exp; ++j) r.add_term(pi_mul(prefix, pi_pow(x, -j)), -1);
            }
        }
        prefix = pi_mul(prefix, pi_pow(x, s.exp));
    }
    return r;
}

Ring relator_derivative(int eps, int gen) { return fox_derivative(relator(eps), gen); }

Ring exact_divide(const Ring& P, const Ring& D) {
    // D = 1 + c g with g of beta-degree 1.
    int eps = P.eps();
    Pi g = eps == 1 ? pi_beta(eps) : Pi{eps, 1, 1};
    i64 c = eps == 1 ? -1 : 1;
    Ring expected = Ring::one(eps, P.domain());
    expected.add_term(g, c);
    if (!(D == expected)) throw NotDivisible("exact_divide: unsupported divisor " + to_string(D));

    Ring lambda(eps, P.domain());
    if (P.is_zero()) return lambda;
    i64 s_min = P.terms().begin()->first.s;
    Ring rem = P;
    while (!rem.is_zero()) {
        i64 s_top = rem.terms().rbegin()->first.s;
        if (s_top <= s_min) break;
        Ring step(eps, P.domain());
        for (auto it = rem.terms().rbegin(); it != rem.terms().rend() && it->first.s == s_top; ++it) {
            Pi mu{eps, it->first.r - sigma(eps, s_top - 1) * g.r, s_top - 1};
            step.add_term(mu, it->second * c);
        }
        lambda = lambda + step;
        rem = rem - step * D;
    }
    if (!rem.is_zero()) throw NotDivisible("exact_divide: nonzero remainder " + to_string(rem));
    return lambda;
}

Ring q_n(const Word& w) {
    int eps = w.basis().epsilon;
    if (!project(w).is_identity()) throw NotInKernel("q_n: word does not lie in N");
    Ring lambda(eps);
    try {
        lambda = exact_divide(fox_derivative(w, 0), relator_derivative(eps, 0));
    } catch (const NotDivisible& e) {
        throw NotInKernel(std::string("q_n: ") + e.what());
    }
    if (!(lambda * relator_derivative(eps, 1) == fox_derivative(w, 1)))
        throw NotInKernel("q_n: beta-derivative consistency check failed");
    return lambda;
}

}  // namespace quadeq
