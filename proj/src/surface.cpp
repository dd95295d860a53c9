#include "quadeq/surface.hpp"

namespace quadeq {

namespace {

void require_same_eps(const Pi& x, const Pi& y) {
    if (x.eps != y.eps) throw EpsilonMismatch("pi elements with different epsilon");
}

}  // namespace

Pi pi_mul(const Pi& x, const Pi& y) {
    require_same_eps(x, y);
    return {x.eps, x.r + sigma(x.eps, x.s) * y.r, x.s + y.s};
}

Pi pi_inv(const Pi& x) { return {x.eps, -sigma(x.eps, x.s) * x.r, -x.s}; }

Pi pi_pow(const Pi& x, i64 k) {
    Pi base = k < 0 ? pi_inv(x) : x;
    i64 e = k < 0 ? -k : k;
    Pi result = pi_identity(x.eps);
    while (e > 0) {
        if (e & 1) result = pi_mul(result, base);
        e >>= 1;
        if (e > 0) base = pi_mul(base, base);
    }
    return result;
}

bool divisible_by_two(const Pi& x) {
    if (x.eps != 1) throw EpsilonMismatch("divisible_by_two is defined for the torus group only");
    return x.r % 2 == 0 && x.s % 2 == 0;
}

Pi apply_phi(i64 L, const Pi& x) {
    if (x.eps != -1) throw EpsilonMismatch("apply_phi needs epsilon = -1");
    i64 odd = (x.s % 2 == 0) ? 0 : 1;
    return {x.eps, x.r - L * odd, x.s};
}

Pi project(const Word& w) {
    int eps = w.basis().epsilon;
    Word a = w.basis().kind == Basis::Adapted ? w : change_basis(w, adapted(eps));
    Pi p = pi_identity(eps);
    for (const auto& s : a.syllables()) {
        Pi g = s.gen == 0 ? pi_alpha(eps, s.exp) : pi_beta(eps, s.exp);
        p = pi_mul(p, g);
    }
    return p;
}

Word canonical_word(const Pi& x) {
    Word w(adapted(x.eps));
    w.push(0, x.r);
    w.push(1, x.s);
    return w;
}

std::string to_string(const Pi& x) { return "(" + std::to_string(x.r) + "," + std::to_string(x.s) + ")"; }

}  // namespace quadeq
