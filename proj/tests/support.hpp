#pragma once

// Shared generators and brute-force oracles for the test suites.

#include <cstdlib>
#include <map>
#include <random>
#include <vector>

#include "quadeq/derived.hpp"
#include "quadeq/grind.hpp"
#include "quadeq/orbits.hpp"

namespace quadeq::testing {

inline Word random_word(std::mt19937_64& rng, BasisTag basis, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> letter(0, 3);
    static const int kLetters[] = {1, -1, 2, -2};
    std::vector<int> l;
    int n = len(rng);
    for (int i = 0; i < n; ++i) l.push_back(kLetters[letter(rng)]);
    return Word::from_letters(basis, l);
}

inline Pi random_pi(std::mt19937_64& rng, int eps, int radius) {
    std::uniform_int_distribution<int> d(-radius, radius);
    return {eps, d(rng), d(rng)};
}

inline Ring random_ring(std::mt19937_64& rng, int eps, int terms, int radius, int coeff = 3) {
    std::uniform_int_distribution<int> c(-coeff, coeff);
    Ring r(eps);
    for (int i = 0; i < terms; ++i) r.add_term(random_pi(rng, eps, radius), c(rng));
    return r;
}

// Union-find closure of an action under its generators on the box |r|, |s| <= outer,
// tracking the character value of a path from each class root.
class OrbitBfs {
public:
    OrbitBfs(const ActionSpec& a, int outer) : a_(a), outer_(outer), side_(2 * outer + 1) {
        parent_.resize(static_cast<std::size_t>(side_ * side_));
        sign_.assign(parent_.size(), 1);
        conflict_.assign(parent_.size(), false);
        for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);
        for (int r = -outer; r <= outer; ++r)
            for (int s = -outer; s <= outer; ++s) {
                Pi g{a.eps, r, s};
                for (auto [h, chi] : moves(g))
                    if (inside(h)) unite(index(g), index(h), chi);
            }
    }

    bool same(const Pi& g, const Pi& h) { return find(index(g)).first == find(index(h)).first; }
    // Character value of the path g -> h (only meaningful when same(g, h)).
    int relative_sign(const Pi& g, const Pi& h) { return find(index(g)).second * find(index(h)).second; }
    // A closed path with character -1 was found in the class of g.
    bool defective(const Pi& g) { return conflict_[static_cast<std::size_t>(find(index(g)).first)]; }

private:
    std::vector<std::pair<Pi, int>> moves(const Pi& g) const {
        std::vector<std::pair<Pi, int>> out;
        out.push_back({pi_inv(g), -1});
        switch (a_.kind) {
            case ActionSpec::Kind::HatAbs:
                out.push_back({pi_mul(a_.u, g), 1});
                out.push_back({pi_mul(pi_inv(a_.u), g), 1});
                break;
            case ActionSpec::Kind::Tilde:
                out.push_back({pi_mul(pi_beta(-1, 2 * a_.n), g), 1});
                out.push_back({pi_mul(pi_beta(-1, -2 * a_.n), g), 1});
                break;
            case ActionSpec::Kind::TildeL: {
                Pi x = a_.x();
                out.push_back({pi_mul(pi_beta(-1, 2 * a_.n), g), 1});
                out.push_back({pi_mul(pi_beta(-1, -2 * a_.n), g), 1});
                out.push_back({pi_mul(x, pi_inv(pi_mul(x, g))), -1});
                break;
            }
            case ActionSpec::Kind::HatL: {
                Pi x = a_.x();
                out.push_back({pi_mul(x, g), -1});
                out.push_back({pi_mul(pi_inv(x), g), -1});
                break;
            }
        }
        return out;
    }

    bool inside(const Pi& g) const { return std::abs(g.r) <= outer_ && std::abs(g.s) <= outer_; }
    int index(const Pi& g) const { return static_cast<int>((g.r + outer_) * side_ + (g.s + outer_)); }

    // Returns root and the character of the path from the element to its root.
    std::pair<int, int> find(int i) {
        int s = 1;
        int cur = i;
        while (parent_[static_cast<std::size_t>(cur)] != cur) {
            s *= sign_[static_cast<std::size_t>(cur)];
            cur = parent_[static_cast<std::size_t>(cur)];
        }
        return {cur, s};
    }

    void unite(int i, int j, int chi) {
        auto [ri, si] = find(i);
        auto [rj, sj] = find(j);
        if (ri == rj) {
            if (si * sj != chi) conflict_[static_cast<std::size_t>(ri)] = true;
            return;
        }
        parent_[static_cast<std::size_t>(ri)] = rj;
        sign_[static_cast<std::size_t>(ri)] = si * chi * sj;
        if (conflict_[static_cast<std::size_t>(ri)]) conflict_[static_cast<std::size_t>(rj)] = true;
    }

    ActionSpec a_;
    int outer_;
    int side_;
    std::vector<int> parent_;
    std::vector<int> sign_;
    std::vector<bool> conflict_;
};

// Parameterizations used by the orbit comparisons, at least ten per action kind.
inline std::vector<ActionSpec> orbit_parameterizations() {
    std::vector<ActionSpec> out;
    for (Pi u : {Pi{1, 1, 1}, Pi{1, 1, 0}, Pi{1, 0, 1}, Pi{1, 2, 1}, Pi{1, 1, -2}, Pi{1, 2, 2}, Pi{1, 0, 0},
                 Pi{1, 3, 1}, Pi{1, -1, 1}, Pi{1, 0, 2}, Pi{1, 2, 3}, Pi{-1, 1, 0}, Pi{-1, 0, 2}, Pi{-1, 1, 2},
                 Pi{-1, 2, -2}, Pi{-1, 1, 4}, Pi{-1, 3, 2}, Pi{-1, 2, 0}, Pi{-1, 0, 4}, Pi{-1, -1, 2}, Pi{-1, 2, 4},
                 Pi{-1, 0, -2}})
        out.push_back(ActionSpec::hat_abs(u));
    for (i64 n : {1, 2, 3, 4, -1, -2, -3, 5, 6, -4}) out.push_back(ActionSpec::tilde(n));
    for (auto [n, L] : std::vector<std::pair<i64, i64>>{{1, 0}, {1, 1}, {1, -2}, {2, 0}, {2, 1}, {3, 2}, {-3, 1},
                                                         {4, -1}, {6, 2}, {-2, 3}, {5, -3}, {12, 1}})
        out.push_back(ActionSpec::tilde_l(n, L));
    for (auto [n, L] : std::vector<std::pair<i64, i64>>{{1, 0}, {1, 1}, {1, -2}, {3, 2}, {-3, 1}, {5, -3},
                                                         {-1, 3}, {2, 1}, {4, -1}, {6, 2}, {-6, 1}, {12, 1}})
        out.push_back(ActionSpec::hat_l(n, L));
    return out;
}

// Every mixed family with parameters in [lo, hi].
inline std::vector<MixedCase> all_cases(i64 lo, i64 hi) {
    std::vector<MixedCase> out;
    for (i64 n = lo; n <= hi; ++n) {
        out.push_back({MixedCase::Kind::Eq2NF, 0, n});
        out.push_back({MixedCase::Kind::Eq4F, 0, n});
        for (i64 m = lo; m <= hi; ++m) {
            out.push_back({MixedCase::Kind::Eq3NF, m, n});
            out.push_back({MixedCase::Kind::Eq4NF, m, n});
        }
    }
    return out;
}

// V from the solvable family: (1 - beta^{2n}) / (1 - x) Y - [n odd] (1 - alpha^L) / (1 - alpha) + kernel terms.
inline Ring constructed_one_param(std::mt19937_64& rng, const MixedCase& mc, i64 L) {
    auto a = ActionSpec::tilde_l(mc.n, L);
    Ring Y = random_ring(rng, -1, 3, 3);
    Ring V = geom_ratio(a.x(), 2 * a.mu(), 1) * Y;
    if (mc.n % 2 != 0) V = V - geom_ratio(pi_alpha(-1), L, 1);
    for (int j = 0; j < 3; ++j) {
        Pi g = random_pi(rng, -1, 3);
        i64 c = static_cast<i64>(rng() % 5) - 2;
        V = V + scalar_mul(c, Ring::single(g) + Ring::single(pi_inv(g)));
    }
    V.add_term(pi_identity(-1), static_cast<i64>(rng() % 5) - 2);
    if (mc.kind == MixedCase::Kind::Eq4F) {
        Ring E = random_ring(rng, -1, 3, 3);
        V = V + scalar_mul(2, E);
    }
    return V;
}

inline Ring constructed_two_param(std::mt19937_64& rng, const MixedCase& mc) {
    Ring Z = random_ring(rng, mc.epsilon(), 4, 3);
    Ring V = (Ring::one(mc.epsilon()) - Ring::single(mc.u_bar())) * Z;
    for (int j = 0; j < 3; ++j) {
        Pi g = random_pi(rng, mc.epsilon(), 4);
        V = V + Ring::single(g) + Ring::single(pi_inv(g));
    }
    V = V + scalar_mul(2, random_ring(rng, mc.epsilon(), 3, 3));
    V.add_term(pi_identity(mc.epsilon()), static_cast<i64>(rng() % 3));
    return V;
}

}  // namespace quadeq::testing
