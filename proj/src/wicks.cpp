#include "quadeq/wicks.hpp"

#include <algorithm>
#include <tuple>

#include "quadeq/surface.hpp"

namespace quadeq {

namespace {

using Letters = std::vector<int>;

Letters slice(const Letters& w, std::size_t from, std::size_t len) {
    return Letters(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(from + len));
}

Letters inverse(const Letters& w) {
    Letters out(w.rbegin(), w.rend());
    for (int& l : out) l = -l;
    return out;
}

// Checks that w[pos, pos + piece.size()) equals piece.
bool at(const Letters& w, std::size_t pos, const Letters& piece) {
    return std::equal(piece.begin(), piece.end(), w.begin() + static_cast<std::ptrdiff_t>(pos));
}

struct Piece {
    int part;
    bool inverted;
};

// Layouts of the four forms as sequences of (part index, inverted).
const std::vector<Piece>& layout(WicksForm f) {
    static const std::vector<Piece> abc{{0, false}, {1, false}, {2, false}, {0, true}, {1, true}, {2, true}};
    static const std::vector<Piece> de{{0, false}, {1, false}, {0, true}, {1, true}};
    static const std::vector<Piece> abcbac{{0, false}, {1, false}, {2, false}, {1, false}, {0, false}, {2, true}};
    static const std::vector<Piece> aabcc{{0, false}, {0, false}, {1, false}, {2, false}, {2, false}, {1, true}};
    switch (f) {
        case WicksForm::OrientableABC: return abc;
        case WicksForm::OrientableDE: return de;
        case WicksForm::NonOrientableABCBAC: return abcbac;
        case WicksForm::NonOrientableAABCC: return aabcc;
    }
    return abc;
}

// Tries part lengths lens against the rotated word; on success fills parts.
bool match_layout(const Letters& w, WicksForm f, const std::vector<std::size_t>& lens, std::vector<Letters>& parts) {
    parts.assign(lens.size(), {});
    std::vector<bool> seen(lens.size(), false);
    std::size_t pos = 0;
    for (const Piece& p : layout(f)) {
        std::size_t len = lens[static_cast<std::size_t>(p.part)];
        auto& part = parts[static_cast<std::size_t>(p.part)];
        if (!seen[static_cast<std::size_t>(p.part)]) {
            Letters s = slice(w, pos, len);
            part = p.inverted ? inverse(s) : s;
            seen[static_cast<std::size_t>(p.part)] = true;
        } else if (!at(w, pos, p.inverted ? inverse(part) : part)) {
            return false;
        }
        pos += len;
    }
    return true;
}

void scan_form(const Letters& w, WicksForm f, bool allow_empty, i64 shift, const BasisTag& basis,
               const Word& U, std::vector<WicksMatch>& out) {
    std::size_t n = w.size();
    if (n % 2 != 0) return;
    std::size_t half = n / 2, lo = allow_empty ? 0 : 1;
    auto emit = [&](const std::vector<std::size_t>& lens) {
        std::vector<Letters> parts;
        if (!match_layout(w, f, lens, parts)) return;
        WicksMatch m;
        m.shift = shift;
        m.form = f;
        for (const auto& p : parts) m.parts.push_back(Word::from_letters(basis, p));
        m.U = U;
        m.t = Word(basis);
        out.push_back(std::move(m));
    };
    if (f == WicksForm::OrientableDE) {
        for (std::size_t a = lo; a + lo <= half; ++a) emit({a, half - a});
        return;
    }
    for (std::size_t a = lo; a <= half; ++a)
        for (std::size_t b = lo; a + b + lo <= half; ++b) emit({a, b, half - a - b});
}

bool parts_less(const WicksMatch& x, const WicksMatch& y) {
    if (x.shift != y.shift) return x.shift < y.shift;
    if (x.form != y.form) return x.form < y.form;
    return x.parts < y.parts;
}

}  // namespace

std::string to_string(WicksForm f) {
    switch (f) {
        case WicksForm::OrientableABC: return "abcABC";
        case WicksForm::OrientableDE: return "deDE";
        case WicksForm::NonOrientableABCBAC: return "abcbaC";
        case WicksForm::NonOrientableAABCC: return "aabccB";
    }
    return "";
}

Word assemble(const WicksMatch& m) {
    Word w(m.parts.empty() ? m.U.basis() : m.parts.front().basis());
    for (const Piece& p : layout(m.form)) {
        const Word& part = m.parts[static_cast<std::size_t>(p.part)];
        w.append(p.inverted ? inv(part) : part);
    }
    return w;
}

std::vector<WicksMatch> wicks_decompositions(const Word& W, WicksKind kind, bool allow_empty) {
    std::vector<WicksMatch> out;
    Letters letters = W.letters();
    std::size_t n = letters.size();
    if (n == 0) return out;
    std::vector<WicksForm> forms = kind == WicksKind::Commutator
                                       ? std::vector<WicksForm>{WicksForm::OrientableABC, WicksForm::OrientableDE}
                                       : std::vector<WicksForm>{WicksForm::NonOrientableABCBAC,
                                                                WicksForm::NonOrientableAABCC};
    for (std::size_t i = 0; i < n; ++i) {
        Letters rotated(letters.begin() + static_cast<std::ptrdiff_t>(i), letters.end());
        rotated.insert(rotated.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(i));
        Word U = Word::from_letters(W.basis(), slice(letters, 0, i));
        for (WicksForm f : forms) scan_form(rotated, f, allow_empty, static_cast<i64>(i), W.basis(), U, out);
    }
    std::stable_sort(out.begin(), out.end(), parts_less);
    return out;
}

std::vector<WicksMatch> wicks_decompositions(const CyclicReduction& cr, WicksKind kind, bool allow_empty) {
    auto out = wicks_decompositions(cr.core, kind, allow_empty);
    for (auto& m : out) m.t = cr.t;
    return out;
}

std::pair<Word, Word> extract_solution(const WicksMatch& m) {
    const auto& p = m.parts;
    Word first, second;
    bool squares = false;
    switch (m.form) {
        case WicksForm::OrientableABC:
            first = mul(p[0], p[1]);
            second = mul(p[2], p[1]);
            break;
        case WicksForm::OrientableDE:
            first = p[0];
            second = p[1];
            break;
        case WicksForm::NonOrientableAABCC:
            first = p[0];
            second = conj(p[1], p[2]);
            squares = true;
            break;
        case WicksForm::NonOrientableABCBAC:
            first = mul(mul(p[0], p[1]), mul(p[2], inv(p[0])));
            second = mul(p[0], inv(p[2]));
            squares = true;
            break;
    }
    Word g = mul(m.t, m.U);
    first = conj(g, first);
    second = conj(g, second);
    Word lhs = squares ? mul(mul(first, first), mul(second, second)) : comm(first, second);
    if (!(lhs == conj(g, assemble(m)))) throw ExtractionFailed("canonical pair does not reproduce the " + to_string(m.form) + " match");
    return {first, second};
}

WicksResult wicks_search(const EquationSpec& spec, const Word& v, i64 budget, bool allow_empty) {
    WicksResult out;
    CyclicReduction cr = cyclic_reduce(rhs_word(spec, v));
    out.core_length = cr.core.length();
    if (out.core_length > budget)
        throw BudgetExceeded("cyclically reduced right-hand side has length " + std::to_string(out.core_length) +
                             " > " + std::to_string(budget));
    // The trivial word has no Wicks form; solutions exist but are not enumerated here.
    out.exhaustive = out.core_length > 0;
    out.matches = wicks_decompositions(cr, spec.delta == 1 ? WicksKind::Commutator : WicksKind::TwoSquares, allow_empty);
    for (std::size_t i = 0; i < out.matches.size(); ++i) {
        auto [z1, z2] = extract_solution(out.matches[i]);
        Word first = z1, second = z2;
        if (spec.delta == -1 && spec.frame == Frame::AdaptedXY) {
            first = mul(z1, z2);
            second = inv(z2);
        }
        Verification ver = verify_solution(spec, v, first, second);
        if (!ver.holds) throw ExtractionFailed("extracted pair does not solve the equation");
        WicksSolution s;
        s.first = first;
        s.second = second;
        s.faithful = ver.faithful_z;
        s.x_in_N = project(spec.delta == 1 ? z1 : mul(z1, z2)).is_identity();
        s.match_index = i;
        out.solutions.push_back(std::move(s));
    }
    return out;
}

}  // namespace quadeq
