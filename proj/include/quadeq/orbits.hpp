#pragma once

#include <string>
#include <vector>

#include "quadeq/grind.hpp"

namespace quadeq {

// Left actions on pi by the groups generated by translations and inversion.
//   HatAbs{u}:   g -> u g, g -> g^-1                      (w(u) = 1)
//   Tilde{n}:    g -> beta^{2n} g, g -> g^-1              (eps = -1)
//   TildeL{n,L}: Tilde plus g -> x g^-1 x^-1              (x = alpha^L beta^{ell_max})
//   HatL{n,L}:   g -> x g, g -> g^-1
struct ActionSpec {
    enum class Kind { HatAbs, Tilde, TildeL, HatL };

    Kind kind = Kind::HatAbs;
    int eps = -1;
    Pi u{};
    i64 n = 0;
    i64 L = 0;

    static ActionSpec hat_abs(const Pi& u);
    static ActionSpec tilde(i64 n);
    static ActionSpec tilde_l(i64 n, i64 L);
    static ActionSpec hat_l(i64 n, i64 L);

    // Greatest odd divisor of |n|, and mu = n / ell_max.
    i64 ell_max() const;
    i64 mu() const;
    // alpha^L beta^{ell_max}.
    Pi x() const;
};

std::string to_string(const ActionSpec& a);

// base + Z v1 + Z v2 in (r, s) coordinates, with the character value of the group elements reaching it.
struct Family {
    Pi base;
    i64 v1r = 0, v1s = 0, v2r = 0, v2s = 0;
    int sign = 1;

    bool contains(const Pi& g) const;
};

// The orbit of g as a finite union of affine lattices.
std::vector<Family> orbit_families(const ActionSpec& a, const Pi& g);
bool same_orbit(const ActionSpec& a, const Pi& g, const Pi& h);

struct ElementClass {
    bool g_tilde_regular = true;
    bool defective = false;
};
// Closed forms: singular iff g = beta^{nk} (nk even) or beta^{nk} alpha^m (nk odd); defective iff n | s.
ElementClass element_class(const ActionSpec& a, const Pi& g);
// True when some element of the stabilizer of g has character -1, read off the orbit families.
bool stabilizer_meets_minus(const ActionSpec& a, const Pi& g);

struct Augmentation {
    i64 value = 0;
    bool mod2 = false;

    friend bool operator==(const Augmentation&, const Augmentation&) = default;
};

// Sum of the coefficients of V over the orbit of base: plain parity for HatAbs and defective
// bases, otherwise weighted by the character relative to base.
Augmentation augment(const ActionSpec& a, const Ring& V, const Pi& base);

// Groups the given elements into orbits, ordered by the (s, r) order of their first member.
std::vector<std::vector<Pi>> group_by_orbit(const ActionSpec& a, const std::vector<Pi>& elements);

}  // namespace quadeq
