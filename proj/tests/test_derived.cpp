#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "quadeq/derived.hpp"
#include "quadeq/orbits.hpp"
#include "quadeq/quot_q.hpp"
#include "support.hpp"

using namespace quadeq;
using Kind = MixedCase::Kind;
using testing::all_cases;
using testing::constructed_one_param;
using testing::constructed_two_param;

namespace {

Ring R(std::initializer_list<std::tuple<i64, i64, i64>> terms, int eps = -1) {
    Ring r(eps);
    for (auto [a, b, c] : terms) r.add_term({eps, a, b}, c);
    return r;
}

Word W(const char* s, int eps = -1) { return parse_word(s, adapted(eps)); }

// Restricted version of the one-parameter decider: g runs through the reduced
// representative sets instead of the full fundamental domain.
std::optional<i64> restricted_decider(const MixedCase& mc, const Ring& V, i64 B) {
    Ring Vp = mc.kind == Kind::Eq4F ? reduce_mod2(V) : V;
    i64 n = mc.n, an = std::llabs(n), ell = mc.ell_max(), Ra = alpha_radius(Vp);
    auto ab = [](i64 k, i64 m) { return Pi{-1, 0, k} * Pi{-1, m, 0}; };
    if (n % 2 == 0) {
        auto t = ActionSpec::tilde(n);
        std::vector<Pi> gs;
        for (i64 k2 = -ell + 1; k2 < ell; ++k2)
            if (k2 % 2 == 0)
                for (i64 m = 1; m <= Ra; ++m) gs.push_back(ab(k2, m));
        for (i64 k2 = 2; k2 < ell; k2 += 2) gs.push_back(ab(k2, 0));
        for (i64 k1 = 1; k1 <= ell; k1 += 2)
            for (i64 m = -Ra; m <= Ra; ++m) gs.push_back(ab(k1, m));
        for (const Pi& g : gs)
            for (i64 r = 1; r < an / ell; ++r) {
                Pi h = pi_beta(-1, 2 * ell * r) * g;
                if (!element_class(t, h).g_tilde_regular) continue;
                if (augment(t, Vp, g).value != augment(t, Vp, h).value) return std::nullopt;
            }
        // The chain beta^{2 ell r} through the singular identity, compared among its regular members.
        std::optional<i64> first;
        for (i64 r = 1; r < an / ell; ++r) {
            Pi h = pi_beta(-1, 2 * ell * r);
            if (!element_class(t, h).g_tilde_regular) continue;
            i64 v = augment(t, Vp, h).value;
            if (first && *first != v) return std::nullopt;
            first = v;
        }
    }
    std::vector<i64> window;
    for (i64 L = 0; L <= B + 1; ++L) {
        if (L > 0 && L <= B) window.push_back(-L);
        window.push_back(L);
    }
    std::sort(window.begin(), window.end(), [](i64 x, i64 y) {
        return std::llabs(x) != std::llabs(y) ? std::llabs(x) < std::llabs(y) : x < y;
    });
    for (i64 L : window) {
        i64 M = Ra + 2 * std::llabs(L) + 1;
        std::vector<Pi> gs;
        for (i64 k2 = 2; k2 < ell; k2 += 2)
            for (i64 m = 0; m <= M; ++m) gs.push_back(ab(k2, m));
        bool ok = true;
        if (n % 2 == 0) {
            auto a = ActionSpec::tilde_l(n, L);
            for (const Pi& g : gs)
                if (augment(a, Vp, g).value != augment(a, Vp, a.x() * g).value) ok = false;
        } else {
            auto a = ActionSpec::hat_l(n, L);
            for (const Pi& g : gs)
                if (augment(a, Vp, g).value != 0) ok = false;
            i64 P = L >= 1 ? L - 1 : -L;
            for (i64 m = 1; m <= M && ok; ++m)
                if (augment(a, Vp, pi_alpha(-1, m)).value != (m <= P ? 1 : 0)) ok = false;
        }
        if (ok) return L;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("analyze_v examples", "[derived]") {
    EquationSpec eq2{1, -1, -1, SolutionClass::NonFaithful, Frame::AdaptedXY};
    ConjData c = analyze_v(eq2, W("b b"));
    CHECK(c.mc.kind == Kind::Eq2NF);
    CHECK(c.mc.n == 1);
    CHECK(to_string(c.v0) == "b^2");
    CHECK(c.V.is_zero());

    c = analyze_v(eq2, W("b b conj(a)"));
    CHECK(c.mc.n == 1);
    CHECK(c.V == R({{1, 0, 1}}));

    EquationSpec eq3{-1, 1, -1, SolutionClass::NonFaithful, Frame::AdaptedXY};
    c = analyze_v(eq3, W("conj(a) conj(A)", 1));
    CHECK(c.mc.m == 0);
    CHECK(c.mc.n == 0);
    CHECK(c.v0.is_identity());
    CHECK(c.V == R({{1, 0, 1}, {-1, 0, 1}}, 1));

    CHECK_THROWS_AS(analyze_v(eq2, W("a")), NotMixedCase);
    CHECK_THROWS_AS(analyze_v(eq2, W("b")), NotMixedCase);
    EquationSpec nonmixed{1, 1, -1, SolutionClass::Faithful, Frame::AdaptedXY};
    CHECK_THROWS_AS(analyze_v(nonmixed, W("a", 1)), NotMixedCase);

    // Original frame: v = b^2 is read in the classic basis.
    EquationSpec eq4f{-1, -1, -1, SolutionClass::Faithful, Frame::OriginalZ};
    // Classic b is beta^-1 in the adapted basis.
    c = analyze_v(eq4f, parse_word("b b", classic(-1)));
    CHECK(c.mc.kind == Kind::Eq4F);
    CHECK(c.mc.n == -1);
}

TEST_CASE("analyze_v reproduces V for constructed v", "[derived]") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 300; ++i) {
        MixedCase mc{static_cast<Kind>(i % 4), static_cast<i64>(rng() % 7) - 3, static_cast<i64>(rng() % 7) - 3};
        if (!mc.two_param()) mc.m = 0;
        int eps = mc.epsilon();
        BasisTag b = adapted(eps);
        Word v0 = mc.two_param() ? (mc.d() == 0 ? Word(b) : pow(mc.c_word(), 2 * mc.d())) : Word::gen(b, 1, 2 * mc.n);
        Word v = v0;
        Ring expected(eps);
        for (int j = 0; j < 3; ++j) {
            Word u = testing::random_word(rng, b, 5);
            i64 e = static_cast<i64>(rng() % 5) - 2;
            v.append(pow(conj_relator(u), e));
            expected.add_term(project(u), e);
        }
        ConjData c = analyze_v(mc.spec(), v);
        REQUIRE(c.mc.kind == mc.kind);
        REQUIRE(c.mc.m == mc.m);
        REQUIRE(c.mc.n == mc.n);
        REQUIRE(c.vbar == mc.vbar());
        REQUIRE(project(mul(inv(c.v0), c.v)).is_identity());
        REQUIRE(c.V == expected);
    }
}

TEST_CASE("first_solutions examples", "[derived]") {
    auto sols = first_solutions({Kind::Eq2NF, 0, 1}, 2);
    bool found = false;
    for (const auto& s : sols)
        if (s.L == 0 && s.ell == 1) {
            found = true;
            CHECK(s.ybar == Pi{-1, 0, 1});
            CHECK(s.xtilde == R({{0, 0, 1}, {0, 1, 1}}));
            CHECK(s.x_word == W("conj(b) R"));
            CHECK(to_string(s.y_word) == "b");
        }
    CHECK(found);

    sols = first_solutions({Kind::Eq3NF, 1, 0}, 3);
    REQUIRE(sols.size() == 2);
    CHECK(sols[0].ell == 1);
    CHECK(sols[0].ybar == Pi{1, 1, 0});
    CHECK(sols[0].xtilde == Ring::one(1) - Ring::single(pi_alpha(1)));

    sols = first_solutions({Kind::Eq3NF, 0, 0}, 1);
    CHECK(sols.size() == 9);
    for (const auto& s : sols) {
        CHECK(s.xtilde.is_zero());
        CHECK(s.x_word.is_identity());
    }
}

TEST_CASE("first_solutions satisfy the first derived equation", "[derived]") {
    for (const auto& mc : all_cases(-4, 4)) {
        INFO(to_string(mc));
        Pi v = mc.vbar();
        Ring rhs = Ring::one(mc.epsilon()) + scalar_mul(mc.theta(), Ring::single(v));
        auto sols = first_solutions(mc, 3);
        REQUIRE_FALSE(sols.empty());
        for (const auto& s : sols) {
            Ring lhs = (Ring::one(mc.epsilon()) - scalar_mul(mc.delta(), Ring::single(s.ybar))) * s.xtilde;
            REQUIRE(lhs == rhs);
            REQUIRE(q_n(s.x_word) == s.xtilde);
            REQUIRE(project(s.y_word) == s.ybar);
            REQUIRE(rank1_check(v, s.ybar, mc.delta(), mc.theta()).has_value());
        }
    }
}

TEST_CASE("first_solutions lists every odd divisor", "[derived]") {
    auto sols = first_solutions({Kind::Eq4F, 0, 6}, 0);
    std::set<i64> ells;
    for (const auto& s : sols) ells.insert(s.ell);
    CHECK(ells == std::set<i64>{-3, -1, 1, 3});
    sols = first_solutions({Kind::Eq4NF, 4, 6}, 10);
    ells.clear();
    for (const auto& s : sols) ells.insert(s.ell);
    CHECK(ells == std::set<i64>{-2, -1, 1, 2});
}

TEST_CASE("rank1_check examples", "[derived]") {
    CHECK(rank1_check({-1, 0, 2}, {-1, 0, 1}, 1, -1) == 2);
    CHECK_FALSE(rank1_check({-1, 0, 3}, {-1, 0, 2}, 1, -1).has_value());
    CHECK(rank1_check({-1, 0, 0}, {-1, 3, 1}, 1, -1) == 0);
    CHECK(rank1_check({1, 0, 0}, {1, 0, 0}, -1, 1) == 1);
    CHECK(rank1_check({-1, 0, 2}, {-1, 0, 1}, -1, -1) == 2);
    CHECK_FALSE(rank1_check({-1, 0, 2}, {-1, 0, 1}, -1, 1).has_value());
    CHECK(rank1_check({1, 4, 0}, {1, -2, 0}, -1, -1) == -2);
}

TEST_CASE("second_decide examples", "[derived]") {
    auto r = second_decide({Kind::Eq3NF, 0, 0}, R({{1, 0, 1}, {-1, 0, 1}}, 1));
    CHECK(r.solvable);
    r = second_decide({Kind::Eq3NF, 0, 0}, R({{1, 0, 1}}, 1));
    CHECK_FALSE(r.solvable);
    CHECK(r.certificate.find("(1,0)") != std::string::npos);
    r = second_decide({Kind::Eq4NF, 1, 0}, R({{0, 2, 1}}));
    CHECK_FALSE(r.solvable);
    CHECK(r.certificate.find("(0,2)") != std::string::npos);
    r = second_decide({Kind::Eq2NF, 0, 1}, Ring(-1));
    CHECK(r.solvable);
    REQUIRE(r.L.has_value());
    CHECK((*r.L == 0 || *r.L == 1));
    CHECK(r.ell == 1);

    // v = beta^2 B_alpha: one defective orbit of parity one forces P(L) = 1.
    r = second_decide({Kind::Eq2NF, 0, 1}, R({{1, 0, 1}}));
    CHECK(r.solvable);
    CHECK(r.L == -1);

    CHECK_THROWS_AS(second_decide({Kind::Eq2NF, 0, 1}, Ring(1)), CaseMismatch);
    CHECK_THROWS_AS(second_decide({Kind::Eq2NF, 0, 1}, reduce_mod2(R({{1, 0, 1}}))), CaseMismatch);

    CHECK(second_decide({Kind::Eq2NF, 0, 0}, R({{1, 0, 1}, {-1, 0, 1}})).solvable);
    CHECK_FALSE(second_decide({Kind::Eq2NF, 0, 0}, R({{1, 0, 1}, {-1, 0, -1}})).solvable);
    CHECK(second_decide({Kind::Eq4F, 0, 0}, R({{1, 0, 1}, {-1, 0, -1}})).solvable);
    CHECK_FALSE(second_decide({Kind::Eq4F, 0, 0}, R({{1, 0, 1}})).solvable);
}

TEST_CASE("two-parameter decider soundness and kernel invariance", "[derived]") {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 500; ++i) {
        MixedCase mc{i % 2 ? Kind::Eq3NF : Kind::Eq4NF, static_cast<i64>(rng() % 7) - 3,
                     static_cast<i64>(rng() % 7) - 3};
        if (mc.d() == 0) mc.m = 1;
        Ring V = constructed_two_param(rng, mc);
        auto r = second_decide(mc, V);
        INFO(to_string(mc) << " V=" << to_string(V));
        REQUIRE(r.solvable);
        REQUIRE(r.ell == mc.d());

        Ring P = testing::random_ring(rng, mc.epsilon(), 4, 4);
        bool base = second_decide(mc, P).solvable;
        REQUIRE(second_decide(mc, P + constructed_two_param(rng, mc)).solvable == base);
    }
}

TEST_CASE("two-parameter decider rejects single off-identity terms", "[derived]") {
    std::mt19937_64 rng(63);
    int rejected = 0;
    for (int i = 0; i < 500; ++i) {
        MixedCase mc{i % 2 ? Kind::Eq3NF : Kind::Eq4NF, static_cast<i64>(rng() % 7) - 3,
                     static_cast<i64>(rng() % 7) - 3};
        if (mc.d() == 0) mc.n = 1;
        Pi g = testing::random_pi(rng, mc.epsilon(), 6);
        testing::OrbitBfs bfs(ActionSpec::hat_abs(mc.u_bar()), 30);
        if (bfs.same(g, pi_identity(mc.epsilon()))) continue;
        auto r = second_decide(mc, Ring::single(g));
        REQUIRE_FALSE(r.solvable);
        REQUIRE_FALSE(r.certificate.empty());
        ++rejected;
    }
    CHECK(rejected > 400);
}

TEST_CASE("one-parameter decider accepts constructed instances", "[derived]") {
    std::mt19937_64 rng(64);
    for (int i = 0; i < 400; ++i) {
        i64 n = static_cast<i64>(rng() % 13) - 6;
        if (n == 0) n = 2;
        MixedCase mc{i % 2 ? Kind::Eq2NF : Kind::Eq4F, 0, n};
        i64 L = static_cast<i64>(rng() % 9) - 4;
        Ring V = constructed_one_param(rng, mc, L);
        INFO(to_string(mc) << " L=" << L << " V=" << to_string(V));
        auto r = second_decide(mc, V);
        REQUIRE(r.solvable);
        REQUIRE(r.ell == mc.ell_max());
    }
}

TEST_CASE("one-parameter decider agrees with the restricted representative sets", "[derived]") {
    std::mt19937_64 rng(65);
    int solvable = 0, unsolvable = 0;
    for (int i = 0; i < 300; ++i) {
        i64 n = static_cast<i64>(rng() % 13) - 6;
        if (n == 0) n = 3;
        MixedCase mc{i % 2 ? Kind::Eq2NF : Kind::Eq4F, 0, n};
        Ring V = i % 3 == 0 ? testing::random_ring(rng, -1, 3, 3)
                            : constructed_one_param(rng, mc, static_cast<i64>(rng() % 7) - 3) +
                                  testing::random_ring(rng, -1, i % 3 == 1 ? 1 : 0, 3);
        Ring Vp = mc.kind == Kind::Eq4F ? reduce_mod2(V) : V;
        i64 B = std::max<i64>(2 * alpha_radius(Vp) + std::llabs(n) + 2, static_cast<i64>(Vp.size()) + 1);
        auto r = second_decide(mc, V);
        auto oracle = restricted_decider(mc, V, B);
        INFO(to_string(mc) << " V=" << to_string(V) << " trace=" << r.trace << r.certificate);
        REQUIRE(r.solvable == oracle.has_value());
        if (r.solvable) REQUIRE(r.L == oracle);
        (r.solvable ? solvable : unsolvable)++;
    }
    CHECK(solvable > 50);
    CHECK(unsolvable > 50);
}

TEST_CASE("one-parameter decider is invariant under kernel perturbations", "[derived]") {
    std::mt19937_64 rng(66);
    for (int i = 0; i < 200; ++i) {
        i64 n = static_cast<i64>(rng() % 9) - 4;
        if (n == 0) n = 1;
        MixedCase mc{i % 2 ? Kind::Eq2NF : Kind::Eq4F, 0, n};
        Ring V = testing::random_ring(rng, -1, 3, 3);
        Ring K(-1);
        for (int j = 0; j < 4; ++j) {
            Pi g = testing::random_pi(rng, -1, 4);
            K = K + scalar_mul(static_cast<i64>(rng() % 5) - 2, Ring::single(g) + Ring::single(pi_inv(g)));
        }
        K.add_term(pi_identity(-1), static_cast<i64>(rng() % 5) - 2);
        auto a = second_decide(mc, V), b = second_decide(mc, V + K);
        REQUIRE(a.solvable == b.solvable);
    }
}

TEST_CASE("one-parameter decider window", "[derived]") {
    // A lone defective term at alpha^2 needs P(L) >= 2 but then alpha^1 must be odd too.
    auto r = second_decide({Kind::Eq2NF, 0, 1}, R({{2, 0, 1}}));
    CHECK_FALSE(r.solvable);
    CHECK(r.window_exhausted);
    CHECK(r.certificate.find("no L in") != std::string::npos);

    // A narrow override cannot reach L = 3 (P = 2) for alpha + alpha^2.
    Ring V = R({{1, 0, 1}, {2, 0, 1}});
    CHECK(second_decide({Kind::Eq2NF, 0, 1}, V).solvable);
    CHECK_FALSE(second_decide({Kind::Eq2NF, 0, 1}, V, 1).solvable);
}
