#include "quadeq/classify.hpp"

#include "quadeq/surface.hpp"

namespace quadeq {

namespace {

struct Candidate {
    Word first;
    Word second;
    std::string source;
};

EquationSpec in_frame(EquationSpec spec, Frame f) {
    spec.frame = f;
    return spec;
}

bool in_class(const EquationSpec& spec, const Verification& ver) {
    return ver.holds && ver.faithful_z == (spec.cls == SolutionClass::Faithful);
}

// Primitive root r and j >= 1 with w = r^j; w must not be the identity.
std::pair<Word, i64> primitive_root(const Word& w) {
    CyclicReduction cr = cyclic_reduce(w);
    auto l = cr.core.letters();
    std::size_t n = l.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = l[i] == l[i - p];
        if (!periodic) continue;
        std::vector<int> head(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(p));
        Word r = conj(cr.t, Word::from_letters(w.basis(), head));
        return {r, static_cast<i64>(n / p)};
    }
    return {w, 1};
}

// Explicit families in the adapted frame; v and u are adapted-basis words.
std::vector<Candidate> pattern_candidates(const EquationSpec& spec, const Word& v, const std::optional<Word>& u) {
    BasisTag t = adapted(spec.epsilon);
    Word B = relator(spec.epsilon);
    Word Bi = inv(B);
    Word al = Word::gen(t, 0), be = Word::gen(t, 1);
    std::vector<Candidate> out;

    if (rhs_word(in_frame(spec, Frame::AdaptedXY), v).is_identity()) {
        if (u) out.push_back({Word(t), *u, "relator-power:(1,u)"});
        out.push_back({Word(t), al, "relator-power:(1,a)"});
        out.push_back({Word(t), be, "relator-power:(1,b)"});
    }
    if (spec.epsilon == -1) {
        Word rest = mul(Bi, v);
        const auto& syl = rest.syllables();
        if (syl.size() == 1 && syl[0].gen == 1 && syl[0].exp % 2 == 0) {
            i64 n = syl[0].exp / 2;
            Word aba = parse_word("a b a", t);
            out.push_back({mul(pow(aba, 2 * n), pow(be, -2 * n)), mul(pow(be, 2 * n), pow(aba, 1 - 2 * n)),
                           "table4.2d"});
        }
        if (v == parse_word("b b conj(a)", t))
            out.push_back({parse_word("conj(b b a) conj(b b)^-1 conj(b b a)^-1 conj(b b a a B)^-1", t),
                           parse_word("R^-2 conj(a)^-1 a a B", t), "table4.2e"});
    }
    if (!v.is_identity()) {
        auto [r, j] = primitive_root(v);
        if (j % 2 == 0) {
            Word s = pow(r, j / 2);
            out.push_back({comm(mul(mul(s, s), Bi), inv(s)), inv(s), "square:([u^2 B^-1,u^-1],u^-1)"});
            out.push_back({comm(s, Bi), conj(Bi, s), "square:([u,B^-1],B^-1 u B)"});
            for (i64 k = 1; 2 * k <= j; ++k) {
                if (j % (2 * k) != 0) continue;
                for (int sign : {1, -1}) {
                    Word uu = pow(r, sign * j / (2 * k));
                    i64 kk = sign * k;
                    out.push_back({mul(pow(uu, 2 * kk), pow(mul(uu, B), -2 * kk)), mul(Bi, inv(uu)),
                                   "power:(u^2k (uB)^-2k,B^-1 u^-1)"});
                }
            }
        }
    }
    out.push_back({comm(v, be), be, "([v,b],b)"});
    Word vbv = conj(v, Bi);
    out.push_back({vbv, inv(v), "(vB^-1v^-1,v^-1)"});
    out.push_back({B, mul(Bi, v), "(B,B^-1v)"});
    out.push_back({comm(al, be), mul(comm(be, al), v), "([a,b],[b,a]v)"});
    return out;
}

std::optional<Witness> first_in_class(const EquationSpec& spec, const Word& v_adapted,
                                      const std::vector<Candidate>& cands) {
    EquationSpec sa = in_frame(spec, Frame::AdaptedXY);
    for (const auto& c : cands) {
        if (!in_class(sa, verify_solution(sa, v_adapted, c.first, c.second))) continue;
        if (spec.frame == Frame::AdaptedXY) return Witness{c.first, c.second, c.source};
        auto [z1, z2] = to_original(sa, c.first, c.second);
        return Witness{z1, z2, c.source};
    }
    return std::nullopt;
}

Verdict not_exists(Reason r, std::string branch, std::string certificate) {
    Verdict out;
    out.outcome = Outcome::NotExists;
    out.reason = r;
    out.branch = std::move(branch);
    out.certificate = std::move(certificate);
    return out;
}

// Table row for a faithful equation with w(v) = theta, read in the classic basis.
struct Table0Row {
    std::string id;
    bool solvable;
    Word z1, z2;
};

std::optional<Table0Row> table0_row(const EquationSpec& spec, const Word& v_classic) {
    BasisTag c = classic(spec.epsilon);
    const auto& syl = v_classic.syllables();
    auto a_pow = [&]() -> std::optional<i64> {
        if (v_classic.is_identity()) return 0;
        if (syl.size() == 1 && syl[0].gen == 0) return syl[0].exp;
        return std::nullopt;
    };
    auto ab_pow = [&]() -> std::optional<i64> {
        if (v_classic.is_identity()) return 0;
        auto [r, j] = primitive_root(v_classic);
        Word ab = parse_word("a b", c);
        if (r == ab) return j;
        if (r == inv(ab)) return -j;
        return std::nullopt;
    };
    auto P = [&](const std::string& s) { return parse_word(s, c); };
    auto a = [&](i64 k) { return Word::gen(c, 0, k); };
    Word b = P("b");
    int d = spec.delta, e = spec.epsilon, th = spec.theta;

    if (d == 1 && e == 1 && th == 1) {
        if (v_classic == P("a")) return Table0Row{"table0.1a", true, P("a a"), b};
        if (v_classic == P("A")) return Table0Row{"table0.1b", true, P("b A B A B"), P("b a a B")};
        if (a_pow()) return Table0Row{"table0.1c", false, {}, {}};
    }
    if (d == 1 && e == -1 && th == -1) {
        if (auto n = a_pow(); n && *n % 2 != 0) return Table0Row{"table0.2a", true, mul(a(*n), b), P("b^-2")};
    }
    if (d == 1 && e == -1 && th == 1) {
        if (auto n = a_pow(); n && *n % 2 == 0) return Table0Row{"table0.2b", false, {}, {}};
        if (ab_pow()) return Table0Row{"table0.2c", false, {}, {}};
    }
    if (d == -1 && e == -1 && th == 1) {
        if (v_classic == P("a b")) return Table0Row{"table0.4a", true, P("a b a"), b};
        if (v_classic == P("B A")) return Table0Row{"table0.4b", true, P("B a b^3"), P("b^-2 a b^2")};
        if (auto n = ab_pow(); n && *n != 1 && *n != -1) return Table0Row{"table0.4c", false, {}, {}};
        if (auto n = a_pow(); n && *n % 2 == 0) return Table0Row{"table0.4d", false, {}, {}};
        if (syl.size() == 2 && syl[0].gen == 0 && syl[0].exp % 2 != 0 && syl[1] == Syllable{1, 1}) {
            i64 n = syl[0].exp;
            return Table0Row{"table0.4e", true, mul(mul(a(n), b), a(2 - n)), b};
        }
    }
    if (d == -1 && e == -1 && th == -1) {
        if (auto n = a_pow(); n && *n % 2 != 0)
            return Table0Row{"table0.4f", true, mul(mul(a(*n), inv(b)), a(-*n)), b};
    }
    return std::nullopt;
}

std::string wicks_summary(const WicksResult& r) {
    return "core length " + std::to_string(r.core_length) + ", " + std::to_string(r.matches.size()) +
           " Wicks matches, none in class";
}

// Wicks search in the adapted frame; fills an Exists verdict, a WicksExhaustive verdict or an
// Undetermined verdict carrying the reason in certificate.
Verdict wicks_stage(const EquationSpec& spec, const Word& v_adapted, const Budgets& budgets, std::string branch) {
    EquationSpec sa = in_frame(spec, Frame::AdaptedXY);
    Verdict out;
    out.branch = std::move(branch);
    WicksResult r;
    try {
        r = wicks_search(sa, v_adapted, budgets.wicks_len);
    } catch (const BudgetExceeded& e) {
        out.certificate = e.what();
        return out;
    }
    for (const auto& s : r.solutions) {
        if (s.faithful != (spec.cls == SolutionClass::Faithful)) continue;
        out.outcome = Outcome::Exists;
        std::string src = "wicks:" + std::to_string(r.matches[s.match_index].shift) + ":" +
                          to_string(r.matches[s.match_index].form);
        if (spec.frame == Frame::AdaptedXY) {
            out.witness = Witness{s.first, s.second, src};
        } else {
            auto [z1, z2] = to_original(sa, s.first, s.second);
            out.witness = Witness{z1, z2, src};
        }
        return out;
    }
    if (r.exhaustive) {
        out.outcome = Outcome::NotExists;
        out.reason = Reason::WicksExhaustive;
        out.certificate = wicks_summary(r);
    } else {
        out.certificate = "right-hand side is trivial; Wicks search does not apply";
    }
    return out;
}

Verdict exists_from(const EquationSpec& spec, const Word& v_adapted, const std::vector<Candidate>& cands,
                    std::string branch) {
    Verdict out;
    out.branch = std::move(branch);
    if (auto w = first_in_class(spec, v_adapted, cands)) {
        out.outcome = Outcome::Exists;
        out.witness = *w;
    }
    return out;
}

Verdict mixed_stage(const EquationSpec& spec, const Word& v, const Word& v_adapted, const Budgets& budgets,
                    const std::string& branch) {
    ConjData cd = analyze_v(spec, v);
    DecideResult dr = second_decide(cd.mc, cd.V, budgets.L_window_override);
    if (!dr.solvable) {
        Verdict out = not_exists(Reason::SecondDerivedUnsolvable, branch, dr.certificate);
        out.second_derived = dr;
        return out;
    }
    Verdict out;
    if (auto w = pattern_witness(spec, v)) {
        out.outcome = Outcome::Exists;
        out.branch = branch;
        out.witness = *w;
    } else {
        out = wicks_stage(spec, v_adapted, budgets, branch);
    }
    out.second_derived = dr;
    return out;
}

Verdict decide(const EquationSpec& spec, const Word& v, const Budgets& budgets) {
    const int d = spec.delta, e = spec.epsilon, th = spec.theta;
    const bool faithful = spec.cls == SolutionClass::Faithful;
    Word va = change_basis(v, adapted(e));
    Pi vbar = project(va);
    const int w = w_eps(vbar);
    const i64 pa = p_alpha(vbar), pb = p_beta(vbar);

    // The left-hand side lies in [F2,F2] (delta=+1) or has even exponent sums (delta=-1).
    Word rhs = rhs_word(in_frame(spec, Frame::AdaptedXY), va);
    i64 s0 = rhs.exponent_sum(0), s1 = rhs.exponent_sum(1);
    bool abelian_ok = d == 1 ? (s0 == 0 && s1 == 0) : (s0 % 2 == 0 && s1 % 2 == 0);
    if (!abelian_ok)
        return not_exists(Reason::AbelianObstruction, faithful ? "table1.2b" : "table2.2a",
                          "right-hand side exponent sums (" + std::to_string(s0) + "," + std::to_string(s1) +
                              ") are not zero");

    auto no = [&](const std::string& row, const std::string& why) {
        return not_exists(Reason::TableBranch, row, why);
    };
    auto cands = [&]() { return pattern_candidates(spec, va, std::nullopt); };
    auto table_exists = [&](const std::string& row) {
        Verdict out = exists_from(spec, va, cands(), row);
        if (out.outcome == Outcome::Exists) out.witness->source = row;
        return out.outcome == Outcome::Exists ? out : wicks_stage(spec, va, budgets, row);
    };
    auto mixed = [&](const std::string& row) { return mixed_stage(spec, v, va, budgets, row + ":mixed"); };
    auto outside = [&]() {
        Word vc = change_basis(v, classic(e));
        if (auto row = table0_row(spec, vc)) {
            if (!row->solvable) return no(row->id, "listed without solutions");
            EquationSpec so = in_frame(spec, Frame::OriginalZ);
            if (in_class(so, verify_solution(so, vc, row->z1, row->z2))) {
                Verdict out;
                out.outcome = Outcome::Exists;
                out.branch = row->id;
                if (spec.frame == Frame::OriginalZ) {
                    out.witness = Witness{row->z1, row->z2, row->id};
                } else {
                    auto [x, y] = to_adapted(so, row->z1, row->z2);
                    out.witness = Witness{x, y, row->id};
                }
                return out;
            }
        }
        std::string branch = "faithful:w(v)=theta";
        Verdict out = exists_from(spec, va, cands(), branch);
        return out.outcome == Outcome::Exists ? out : wicks_stage(spec, va, budgets, branch);
    };

    if (faithful) {
        if (e == 1 && d == -1) return no("table1.3", "faithful solutions need sgn(y) = -1, impossible for epsilon = +1");
        if (w == th) return outside();
        if (e == 1) return table_exists("table1.1");
        if (d == 1) return table_exists("table1.2a");
        if (th == 1) return table_exists("table1.4a");
        if (pa != 0) return no("table1.4b", "p_alpha(vbar) = " + std::to_string(pa) + " is nonzero");
        return mixed("table1.4c");
    }
    if (e == 1 && d == 1) return no("table2.1", "non-faithful solutions need a letter of sign -1, impossible for epsilon = +1");
    if (e == -1 && d == 1) {
        if (w == -1) return table_exists("table2.2b");
        if (pa != 0) return no("table2.2c", "p_alpha(vbar) = " + std::to_string(pa) + " is nonzero");
        return mixed("table2.2d");
    }
    if (e == 1) {
        if (th == 1) return table_exists("table2.3a");
        if (pa % 2 != 0 || pb % 2 != 0) return no("table2.3b", "vbar = " + to_string(vbar) + " is not divisible by 2");
        return mixed("table2.3c");
    }
    if (th == 1) {
        if (w == -1) return no("table2.4a", "w(vbar) = -1 with theta = +1");
        return table_exists("table2.4b");
    }
    if (w == -1) return no("table2.4c", "w(vbar) = -1 with theta = -1");
    if (pb % 4 != 0 || pa % 2 != 0)
        return no("table2.4d", "vbar = " + to_string(vbar) + " fails 4 | p_beta and 2 | p_alpha");
    return mixed("table2.4e");
}

}  // namespace

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Exists: return "exists";
        case Outcome::NotExists: return "not_exists";
        case Outcome::Undetermined: return "undetermined";
    }
    return "";
}

std::string to_string(Reason r) {
    switch (r) {
        case Reason::AbelianObstruction: return "abelian_obstruction";
        case Reason::TableBranch: return "table_branch";
        case Reason::SecondDerivedUnsolvable: return "second_derived_unsolvable";
        case Reason::WicksExhaustive: return "wicks_exhaustive";
    }
    return "";
}

std::optional<Witness> pattern_witness(const EquationSpec& spec, const Word& v, std::optional<Word> u) {
    Word va = change_basis(v, adapted(spec.epsilon));
    if (u) *u = change_basis(*u, adapted(spec.epsilon));
    return first_in_class(spec, va, pattern_candidates(spec, va, u));
}

Verdict classify(const EquationSpec& spec, const Word& v, const Budgets& budgets) {
    if (!(v.basis() == spec.basis())) throw BasisMismatch("v is not in the basis of the equation frame");
    Verdict out = decide(spec, v, budgets);
    out.searched = budgets;
    if (out.outcome == Outcome::Exists) {
        Verification ver = verify_solution(spec, v, out.witness->first, out.witness->second);
        out.verified = in_class(spec, ver);
        if (!out.verified) {
            out.outcome = Outcome::Undetermined;
            out.certificate = "candidate witness from " + out.witness->source + " failed verification";
            out.witness.reset();
        }
    }
    return out;
}

std::vector<FixtureRow> table_fixtures() {
    std::vector<FixtureRow> rows;
    auto add = [&](std::string id, EquationSpec spec, const Word& v, const Word& first, const Word& second,
                   bool faithful) { rows.push_back({std::move(id), spec, v, first, second, faithful}); };
    const SolutionClass F = SolutionClass::Faithful, NF = SolutionClass::NonFaithful;
    const Frame O = Frame::OriginalZ, A = Frame::AdaptedXY;

    // Classic-basis rows, faithful, sgn(v) = theta.
    {
        BasisTag c = classic(1);
        EquationSpec s{1, 1, 1, F, O};
        add("table0.1a", s, parse_word("a", c), parse_word("a a", c), parse_word("b", c), true);
        add("table0.1b", s, parse_word("A", c), parse_word("b A B A B", c), parse_word("b a a B", c), true);
    }
    {
        BasisTag c = classic(-1);
        EquationSpec s2{1, -1, -1, F, O};
        for (i64 n : {1, 3, -1}) {
            Word an = Word::gen(c, 0, n);
            add("table0.2a[n=" + std::to_string(n) + "]", s2, an, mul(an, parse_word("b", c)),
                parse_word("b^-2", c), true);
        }
        EquationSpec s4{-1, -1, 1, F, O};
        add("table0.4a", s4, parse_word("a b", c), parse_word("a b a", c), parse_word("b", c), true);
        add("table0.4b", s4, parse_word("B A", c), parse_word("B a b^3", c), parse_word("b^-2 a b^2", c), true);
        for (i64 n : {1, 3, -1}) {
            Word an = Word::gen(c, 0, n), b = parse_word("b", c);
            add("table0.4e[n=" + std::to_string(n) + "]", s4, mul(an, b), mul(mul(an, b), Word::gen(c, 0, 2 - n)),
                b, true);
        }
        EquationSpec s4f{-1, -1, -1, F, O};
        for (i64 n : {1, 3, -1}) {
            Word an = Word::gen(c, 0, n), b = parse_word("b", c);
            add("table0.4f[n=" + std::to_string(n) + "]", s4f, an, mul(mul(an, inv(b)), inv(an)), b, true);
        }
    }

    // Adapted-basis rows. v pools are filtered by the row's sign condition.
    const std::vector<std::string> v_pool{"1", "a", "b", "a b", "b b", "a a b", "b A b", "a b A", "conj(b) a"};
    const std::vector<std::string> u_pool{"b", "a b", "a a b", "a", "b b", "a b a"};
    auto pool = [&](const std::vector<std::string>& src, int eps, std::optional<int> sign) {
        std::vector<std::pair<std::string, Word>> out;
        for (const auto& s : src) {
            Word w = parse_word(s, adapted(eps));
            if (!sign || sgn(w) == *sign) out.emplace_back(s, w);
        }
        return out;
    };
    auto tag = [](const std::string& row, const std::string& key, const std::string& val) {
        return row + "[" + key + "=" + val + "]";
    };
    for (int eps : {1, -1}) {
        BasisTag t = adapted(eps);
        Word B = relator(eps), Bi = inv(B);
        Word al = Word::gen(t, 0), be = Word::gen(t, 1);
        if (eps == 1) {
            for (const auto& [s, v] : pool(v_pool, 1, std::nullopt)) {
                add(tag("table1.1", "v", s), {1, 1, -1, F, A}, v, conj(v, Bi), inv(v), true);
                add(tag("table2.3a", "v", s), {-1, 1, 1, NF, A}, v, comm(al, be), mul(comm(be, al), v), false);
            }
            for (const auto& [s, u] : pool(u_pool, 1, std::nullopt)) {
                Word v = mul(u, u);
                EquationSpec sp{-1, 1, -1, NF, A};
                add(tag("table4.3c/1", "u", s), sp, v, comm(mul(v, Bi), inv(u)), inv(u), false);
                add(tag("table4.3c/2", "u", s), sp, v, comm(u, Bi), conj(Bi, u), false);
            }
            continue;
        }
        for (const auto& [s, v] : pool(v_pool, -1, 1))
            add(tag("table1.2a", "v", s), {1, -1, -1, F, A}, v, conj(v, Bi), inv(v), true);
        for (const auto& [s, v] : pool(v_pool, -1, -1)) {
            add(tag("table1.4a", "v", s), {-1, -1, 1, F, A}, v, B, mul(Bi, v), true);
            add(tag("table2.2b", "v", s), {1, -1, -1, NF, A}, v, conj(v, Bi), inv(v), false);
        }
        for (const auto& [s, v] : pool(v_pool, -1, 1))
            add(tag("table2.4b", "v", s), {-1, -1, 1, NF, A}, v, B, mul(Bi, v), false);

        const EquationSpec eq4f{-1, -1, -1, F, A}, eq4nf{-1, -1, -1, NF, A}, eq2nf{1, -1, -1, NF, A};
        for (int sign : {-1, 1}) {
            const EquationSpec& sp = sign == -1 ? eq4f : eq4nf;
            std::string sq = sign == -1 ? "table3.4c" : "table4.4d";
            std::string one = sign == -1 ? "table3.4e" : "table4.4c";
            for (const auto& [s, u] : pool(u_pool, -1, sign)) {
                Word v = mul(u, u);
                add(tag(sq + "/1", "u", s), sp, v, comm(mul(v, Bi), inv(u)), inv(u), sign == -1);
                add(tag(sq + "/2", "u", s), sp, v, comm(u, Bi), conj(Bi, u), sign == -1);
                for (i64 m : {1, 2, 3})
                    add(tag(one, "u", s) + "[m=" + std::to_string(m) + "]", sp, pow(B, m), Word(t), u, sign == -1);
            }
        }
        Word ab = parse_word("a b", t), aba = parse_word("a b a", t);
        for (i64 n : {1, 2, 3}) {
            Word v = pow(ab, 2 * n);
            add(tag("table3.4d", "n", std::to_string(n)), eq4f, v, comm(v, be), be, true);
            add(tag("table4.2d", "n", std::to_string(n)), eq2nf, mul(B, pow(be, 2 * n)),
                mul(pow(aba, 2 * n), pow(be, -2 * n)), mul(pow(be, 2 * n), pow(aba, 1 - 2 * n)), false);
        }
        for (const auto& [s, u] : pool(u_pool, -1, -1))
            for (i64 k : {1, 2, 3})
                add(tag("table4.2c", "u", s) + "[k=" + std::to_string(k) + "]", eq2nf, pow(u, 2 * k),
                    mul(pow(u, 2 * k), pow(mul(u, B), -2 * k)), mul(Bi, inv(u)), false);
        add("table4.2e", eq2nf, parse_word("b b conj(a)", t),
            parse_word("conj(b b a) conj(b b)^-1 conj(b b a)^-1 conj(b b a a B)^-1", t),
            parse_word("R^-2 conj(a)^-1 a a B", t), false);
    }
    return rows;
}

TableReport verify_tables() {
    TableReport rep;
    for (const auto& row : table_fixtures()) {
        ++rep.checked;
        Verification ver = verify_solution(row.spec, row.v, row.first, row.second);
        std::string why;
        if (!ver.holds) why = "does not solve the equation";
        else if (ver.faithful_z != row.faithful) why = "class label mismatch";
        else if (row.spec.frame == Frame::AdaptedXY && (!ver.x_in_N || ver.faithful != ver.faithful_z))
            why = "x is not in N";
        if (!why.empty()) rep.failures.push_back(row.id + ": " + why);
    }
    return rep;
}

}  // namespace quadeq
