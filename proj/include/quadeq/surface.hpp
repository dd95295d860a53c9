#pragma once

#include <compare>
#include <string>

#include "quadeq/fgword.hpp"

namespace quadeq {

// Canonical element alpha^r beta^s of pi_eps = F2 / <<B>>.
struct Pi {
    int eps = 1;
    i64 r = 0;
    i64 s = 0;

    bool is_identity() const { return r == 0 && s == 0; }
    friend bool operator==(const Pi&, const Pi&) = default;
};

// Total order by (s, r); used for map keys and serialization.
struct PiLess {
    bool operator()(const Pi& x, const Pi& y) const { return x.s != y.s ? x.s < y.s : x.r < y.r; }
};

inline Pi pi_identity(int eps) { return {eps, 0, 0}; }
inline Pi pi_alpha(int eps, i64 k = 1) { return {eps, k, 0}; }
inline Pi pi_beta(int eps, i64 k = 1) { return {eps, 0, k}; }

// eps^s.
inline int sigma(int eps, i64 s) { return (eps == 1 || s % 2 == 0) ? 1 : -1; }

Pi pi_mul(const Pi& x, const Pi& y);
Pi pi_inv(const Pi& x);
Pi pi_pow(const Pi& x, i64 k);
inline Pi operator*(const Pi& x, const Pi& y) { return pi_mul(x, y); }

inline int w_eps(const Pi& x) { return sigma(x.eps, x.s); }
inline i64 p_alpha(const Pi& x) { return x.r; }
inline i64 p_beta(const Pi& x) { return x.s; }
bool divisible_by_two(const Pi& x);

// phi^L with phi(alpha) = alpha, phi(beta) = beta alpha (eps = -1 only).
Pi apply_phi(i64 L, const Pi& x);

// Image of a word under F2 -> pi. Classic-basis words are converted first.
Pi project(const Word& w);

// Word alpha^r beta^s.
Word canonical_word(const Pi& x);

std::string to_string(const Pi& x);

}  // namespace quadeq
