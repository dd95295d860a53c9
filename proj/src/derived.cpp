#include "quadeq/derived.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "quadeq/orbits.hpp"
#include "quadeq/quot_q.hpp"

namespace quadeq {

namespace {

i64 odd_part(i64 n) {
    n = std::llabs(n);
    while (n != 0 && n % 2 == 0) n /= 2;
    return n;
}

// Divisors of |n| (odd ones only when odd_only), with both signs, ordered 1, -1, 3, -3, ...
std::vector<i64> signed_divisors(i64 n, bool odd_only) {
    std::vector<i64> out;
    for (i64 l = 1; l <= std::llabs(n); ++l) {
        if (std::llabs(n) % l != 0 || (odd_only && l % 2 == 0)) continue;
        out.push_back(l);
        out.push_back(-l);
    }
    return out;
}

// Product of conjugated relators B_{c^{j ell}}^{+-1} whose q_n image is
// (1 - c^total) / (1 - c^ell), or (1 - c^total) / (1 + c^ell) when alternating.
Word relator_product(const Word& c, i64 total, i64 ell, bool alternating) {
    Word w(c.basis());
    i64 q = total / ell;
    auto B = [&](i64 j, i64 e) { w.append(pow(conj_relator(pow(c, j * ell)), e)); };
    if (!alternating) {
        if (q > 0)
            for (i64 j = q - 1; j >= 0; --j) B(j, 1);
        else
            for (i64 j = q; j < 0; ++j) B(j, -1);
    } else if (q > 0) {
        for (i64 j = q - 2; j >= 0; j -= 2) B(j, 1);
        for (i64 j = 1; j < q; j += 2) B(j, -1);
    } else {
        for (i64 j = q; j < 0; j += 2) B(j, -1);
        for (i64 j = -1; j > q; j -= 2) B(j, 1);
    }
    return w;
}

std::string pi_str(const Pi& g) { return to_string(g); }

void require_matching(const MixedCase& mc, const Ring& V) {
    if (V.eps() != mc.epsilon()) throw CaseMismatch("V lives over the wrong surface group for " + to_string(mc));
    if (V.domain() != Domain::Integer) throw CaseMismatch("V must have integer coefficients");
}

DecideResult solvable(std::optional<i64> ell, std::optional<i64> L, std::string trace) {
    DecideResult r;
    r.solvable = true;
    r.ell = ell;
    r.L = L;
    r.trace = std::move(trace);
    return r;
}

DecideResult unsolvable(std::string certificate, bool exhausted = false) {
    DecideResult r;
    r.certificate = std::move(certificate);
    r.window_exhausted = exhausted;
    return r;
}

DecideResult decide_two_param(const MixedCase& mc, const Ring& V) {
    Ring Vp = reduce_mod2(V);
    if (mc.m == 0 && mc.n == 0) {
        QElement X = p_q(Vp);
        if (X.is_zero()) return solvable(std::nullopt, std::nullopt, "vbar = 1: p_Q'(V mod 2) = 0");
        return unsolvable("p_Q'(V mod 2) = " + to_string(X) + " != 0");
    }
    ActionSpec a = ActionSpec::hat_abs(mc.u_bar());
    std::vector<Pi> support;
    for (const auto& [g, c] : Vp.terms()) support.push_back(g);
    Pi one = pi_identity(mc.epsilon());
    auto classes = group_by_orbit(a, support);
    for (const auto& cls : classes) {
        if (same_orbit(a, cls.front(), one)) continue;
        i64 parity = augment(a, Vp, cls.front()).value;
        if (parity != 0)
            return unsolvable("orbit of " + pi_str(cls.front()) + " under " + to_string(a) +
                              " misses the identity and has augmentation 1");
    }
    std::ostringstream t;
    t << to_string(a) << ": " << classes.size() << " orbit(s) meet supp(V mod 2), all off-identity ones even";
    return solvable(mc.d(), std::nullopt, t.str());
}

struct Violation {
    bool ok = true;
    std::string what;
};

// n even, L-independent part: twisted G~-augmentations agree along beta^{2 ell r} for 1 <= r < |n|/ell.
Violation chain_condition(const MixedCase& mc, const Ring& Vp) {
    i64 n = mc.n, an = std::llabs(n), ell = mc.ell_max(), R = alpha_radius(Vp);
    ActionSpec t = ActionSpec::tilde(n);
    for (i64 s = 0; s < 2 * an; ++s)
        for (i64 p = -R; p <= R; ++p) {
            Pi g{-1, p, s};
            if (!element_class(t, g).g_tilde_regular) continue;
            i64 base = augment(t, Vp, g).value;
            for (i64 r = 1; r < an / ell; ++r) {
                Pi h = pi_beta(-1, 2 * ell * r) * g;
                if (!element_class(t, h).g_tilde_regular) continue;
                i64 other = augment(t, Vp, h).value;
                if (other != base) {
                    std::ostringstream o;
                    o << "twisted G~-augmentations differ at " << pi_str(g) << " (" << base << ") and "
                      << pi_str(h) << " (" << other << ")";
                    return {false, o.str()};
                }
            }
        }
    return {};
}

// n even: augmentations at g and x g agree for the non-defective G~_L orbits.
Violation even_pair_condition(const MixedCase& mc, const Ring& Vp, i64 L) {
    i64 n = mc.n, an = std::llabs(n), ell = mc.ell_max(), R = alpha_radius(Vp) + 2 * std::llabs(L) + 1;
    ActionSpec a = ActionSpec::tilde_l(n, L);
    Pi x = a.x();
    for (i64 s = 0; s < 2 * an; s += 2) {
        if (s % (2 * ell) == 0) continue;
        for (i64 p = -R; p <= R; ++p) {
            Pi g{-1, p, s};
            i64 lhs = augment(a, Vp, g).value, rhs = augment(a, Vp, x * g).value;
            if (lhs != rhs) {
                std::ostringstream o;
                o << "L=" << L << ": twisted G~_L-augmentations differ at " << pi_str(g) << " (" << lhs
                  << ") and " << pi_str(x * g) << " (" << rhs << ")";
                return {false, o.str()};
            }
        }
    }
    return {};
}

i64 pattern_length(i64 L) { return L >= 1 ? L - 1 : -L; }

// n odd: non-defective hat augmentations vanish and alpha^m has parity [m <= P(L)].
Violation odd_condition(const MixedCase& mc, const Ring& Vp, i64 L) {
    i64 n = mc.n, an = std::llabs(n), M = alpha_radius(Vp) + 2 * std::llabs(L) + 1;
    ActionSpec a = ActionSpec::hat_l(n, L);
    for (i64 s = 2; s < 2 * an; s += 2)
        for (i64 p = -M; p <= M; ++p) {
            Pi g{-1, p, s};
            i64 v = augment(a, Vp, g).value;
            if (v != 0) {
                std::ostringstream o;
                o << "L=" << L << ": hat augmentation at " << pi_str(g) << " is " << v;
                return {false, o.str()};
            }
        }
    i64 P = pattern_length(L);
    for (i64 m = 1; m <= M; ++m) {
        i64 v = augment(a, Vp, pi_alpha(-1, m)).value;
        i64 want = m <= P ? 1 : 0;
        if (v != want) {
            std::ostringstream o;
            o << "L=" << L << ": defective orbit of " << pi_str(pi_alpha(-1, m)) << " has parity " << v
              << ", expected " << want << " (P(L)=" << P << ")";
            return {false, o.str()};
        }
    }
    return {};
}

DecideResult decide_one_param(const MixedCase& mc, const Ring& V, std::optional<i64> override) {
    Ring Vp = mc.kind == MixedCase::Kind::Eq4F ? reduce_mod2(V) : V;
    if (mc.n == 0) {
        QElement X = p_q(V);
        if (mc.kind == MixedCase::Kind::Eq2NF) {
            if (X.is_zero()) return solvable(1, std::nullopt, "n = 0: p_Q(V) = 0");
            return unsolvable("p_Q(V) = " + to_string(X) + " != 0");
        }
        if (q_divisible_by_two(X)) return solvable(1, std::nullopt, "n = 0: p_Q(V) divisible by 2");
        return unsolvable("p_Q(V) = " + to_string(X) + " is not divisible by 2");
    }
    i64 n = mc.n, ell = mc.ell_max();
    bool even = n % 2 == 0;
    if (even) {
        Violation v = chain_condition(mc, Vp);
        if (!v.ok) return unsolvable(v.what);
    }
    i64 R = alpha_radius(Vp);
    i64 B = override ? *override
                     : std::max<i64>(2 * R + std::llabs(n) + 2, static_cast<i64>(Vp.size()) + 1);
    std::vector<i64> window;
    for (i64 L = -B; L <= B + 1; ++L) window.push_back(L);
    std::stable_sort(window.begin(), window.end(), [](i64 x, i64 y) {
        return std::llabs(x) != std::llabs(y) ? std::llabs(x) < std::llabs(y) : x < y;
    });
    std::string first_failure;
    for (i64 L : window) {
        Violation v = even ? even_pair_condition(mc, Vp, L) : odd_condition(mc, Vp, L);
        if (v.ok) {
            std::ostringstream t;
            t << to_string(mc) << ": ell=" << ell << ", L=" << L << " passes";
            if (even) t << " (chain and pair conditions)";
            else t << " (hat augmentations vanish, defective pattern P(L)=" << pattern_length(L) << ")";
            t << "; window [" << -B << "," << B + 1 << "]";
            return solvable(ell, L, t.str());
        }
        if (first_failure.empty()) first_failure = v.what;
    }
    std::ostringstream c;
    c << "no L in [" << -B << "," << B + 1 << "] passes; first violation: " << first_failure;
    return unsolvable(c.str(), true);
}

}  // namespace

i64 MixedCase::d() const { return std::gcd(m, n); }

Pi MixedCase::c_bar() const {
    if (!two_param() || d() == 0) throw CaseMismatch("c is defined for Eq3NF/Eq4NF with (m,n) != 0");
    i64 k = d();
    return {epsilon(), m / k, kind == Kind::Eq3NF ? n / k : 2 * n / k};
}

Word MixedCase::c_word() const {
    Pi c = c_bar();
    BasisTag b = adapted(epsilon());
    return mul(Word::gen(b, 0, c.r), Word::gen(b, 1, c.s));
}

Pi MixedCase::u_bar() const { return pi_pow(c_bar(), d()); }

Pi MixedCase::vbar() const {
    switch (kind) {
        case Kind::Eq2NF:
        case Kind::Eq4F: return pi_beta(-1, 2 * n);
        case Kind::Eq3NF: return {1, 2 * m, 2 * n};
        case Kind::Eq4NF: return {-1, 2 * m, 4 * n};
    }
    return {};
}

i64 MixedCase::ell_max() const { return odd_part(n); }

i64 MixedCase::mu() const { return n == 0 ? 0 : n / ell_max(); }

std::string to_string(MixedCase::Kind k) {
    switch (k) {
        case MixedCase::Kind::Eq2NF: return "Eq2NF";
        case MixedCase::Kind::Eq3NF: return "Eq3NF";
        case MixedCase::Kind::Eq4F: return "Eq4F";
        case MixedCase::Kind::Eq4NF: return "Eq4NF";
    }
    return "";
}

std::string to_string(const MixedCase& mc) {
    std::ostringstream o;
    o << to_string(mc.kind) << "{";
    if (mc.two_param()) o << "m=" << mc.m << ",";
    o << "n=" << mc.n << "}";
    return o.str();
}

std::optional<MixedCase::Kind> mixed_kind(const EquationSpec& spec) {
    if (spec.theta != -1) return std::nullopt;
    bool f = spec.cls == SolutionClass::Faithful;
    if (spec.delta == 1 && spec.epsilon == -1 && !f) return MixedCase::Kind::Eq2NF;
    if (spec.delta == -1 && spec.epsilon == 1 && !f) return MixedCase::Kind::Eq3NF;
    if (spec.delta == -1 && spec.epsilon == -1) return f ? MixedCase::Kind::Eq4F : MixedCase::Kind::Eq4NF;
    return std::nullopt;
}

ConjData analyze_v(const EquationSpec& spec, const Word& v) {
    auto kind = mixed_kind(spec);
    if (!kind) throw NotMixedCase("(delta,eps,theta,class) is not one of the mixed families");
    BasisTag b = adapted(spec.epsilon);
    Word va = change_basis(v, b);
    Pi vb = project(va);
    MixedCase mc{*kind, 0, 0};
    auto fail = [&](const char* shape) {
        throw NotMixedCase("vbar = " + to_string(vb) + " is not of the form " + shape + " required by " +
                           to_string(*kind) + "; the table branch for this vbar applies instead");
    };
    switch (*kind) {
        case MixedCase::Kind::Eq2NF:
        case MixedCase::Kind::Eq4F:
            if (vb.r != 0 || vb.s % 2 != 0) fail("beta^{2n}");
            mc.n = vb.s / 2;
            break;
        case MixedCase::Kind::Eq3NF:
            if (vb.r % 2 != 0 || vb.s % 2 != 0) fail("alpha^{2m} beta^{2n}");
            mc.m = vb.r / 2;
            mc.n = vb.s / 2;
            break;
        case MixedCase::Kind::Eq4NF:
            if (vb.r % 2 != 0 || vb.s % 4 != 0) fail("alpha^{2m} beta^{4n}");
            mc.m = vb.r / 2;
            mc.n = vb.s / 4;
            break;
    }
    Word v0(b);
    if (mc.two_param()) {
        if (mc.d() != 0) v0 = pow(mc.c_word(), 2 * mc.d());
    } else {
        v0 = Word::gen(b, 1, 2 * mc.n);
    }
    Ring V = q_n(mul(inv(v0), va));
    return {va, vb, mc, v0, V};
}

std::vector<FirstSolution> first_solutions(const MixedCase& mc, i64 bound) {
    std::vector<FirstSolution> out;
    int eps = mc.epsilon();
    BasisTag b = adapted(eps);
    if (mc.two_param()) {
        if (mc.d() == 0) {
            for (i64 L = -bound; L <= bound; ++L)
                for (i64 ell = -bound; ell <= bound; ++ell) {
                    i64 s = mc.kind == MixedCase::Kind::Eq3NF ? ell : 2 * ell;
                    out.push_back({L, ell, Ring(eps), Pi{eps, L, s}, Word(b),
                                   mul(Word::gen(b, 0, L), Word::gen(b, 1, s))});
                }
            return out;
        }
        Word c = mc.c_word();
        Pi cb = mc.c_bar();
        for (i64 ell : signed_divisors(mc.d(), false)) {
            if (std::llabs(ell) > bound) continue;
            out.push_back({std::nullopt, ell, alt_geom_ratio(cb, 2 * mc.d(), ell), pi_pow(cb, ell),
                           relator_product(c, 2 * mc.d(), ell, true), pow(c, ell)});
        }
        return out;
    }
    bool alternating = mc.kind == MixedCase::Kind::Eq4F;
    std::vector<i64> ells;
    if (mc.n == 0) {
        for (i64 l = 1; l <= bound; l += 2) {
            ells.push_back(l);
            ells.push_back(-l);
        }
    } else {
        ells = signed_divisors(mc.n, true);
    }
    for (i64 L = -bound; L <= bound; ++L) {
        Word cL = mul(Word::gen(b, 1), Word::gen(b, 0, -L));
        Pi cb = project(cL);
        for (i64 ell : ells) {
            Ring xt = mc.n == 0 ? Ring(eps)
                      : alternating ? alt_geom_ratio(cb, 2 * mc.n, ell)
                                    : geom_ratio(cb, 2 * mc.n, ell);
            Word xw = mc.n == 0 ? Word(b) : relator_product(cL, 2 * mc.n, ell, alternating);
            out.push_back({L, ell, xt, pi_pow(cb, ell), xw, pow(cL, ell)});
        }
    }
    return out;
}

std::optional<i64> rank1_check(const Pi& vbar, const Pi& ybar, int delta, int theta) {
    auto sign_ok = [&](i64 k) { return theta * ((delta == -1 && k % 2 != 0) ? -1 : 1) == -1; };
    if (ybar.is_identity()) {
        if (!vbar.is_identity()) return std::nullopt;
        for (i64 k : {0, 1})
            if (sign_ok(k)) return k;
        return std::nullopt;
    }
    i64 k;
    if (ybar.s != 0) {
        if (vbar.s % ybar.s != 0) return std::nullopt;
        k = vbar.s / ybar.s;
    } else {
        if (vbar.s != 0 || vbar.r % ybar.r != 0) return std::nullopt;
        k = vbar.r / ybar.r;
    }
    if (!(pi_pow(ybar, k) == vbar) || !sign_ok(k)) return std::nullopt;
    return k;
}

DecideResult second_decide(const MixedCase& mc, const Ring& V, std::optional<i64> L_window_override) {
    require_matching(mc, V);
    if (L_window_override && *L_window_override < 0) throw CaseMismatch("L window must be non-negative");
    return mc.two_param() ? decide_two_param(mc, V) : decide_one_param(mc, V, L_window_override);
}

}  // namespace quadeq
