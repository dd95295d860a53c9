#include "quadeq/fgword.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "quadeq/surface.hpp"

namespace quadeq {

namespace {

constexpr i64 kMaxParsedExponent = 100000;

i64 sign_of(i64 x) { return x > 0 ? 1 : -1; }

void require_same_basis(const Word& x, const Word& y) {
    if (!(x.basis() == y.basis())) throw BasisMismatch("operands use different bases");
}

class Parser {
public:
    Parser(std::string_view text, BasisTag basis) : s_(text), basis_(basis) {}

    Word parse() {
        skip_ws();
        if (pos_ == s_.size()) fail("empty word");
        Word w = sequence();
        skip_ws();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool at_end_of_sequence() {
        skip_ws();
        return pos_ == s_.size() || s_[pos_] == ')' || s_[pos_] == ']' || s_[pos_] == ',';
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Word sequence() {
        if (at_end_of_sequence()) fail("expected a term");
        Word w(basis_);
        while (!at_end_of_sequence()) w.append(term());
        return w;
    }

    Word term() {
        Word a = atom();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            return pow(a, integer());
        }
        return a;
    }

    i64 integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an integer");
        i64 v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > kMaxParsedExponent) {
                pos_ = start;
                fail("exponent out of range");
            }
            ++pos_;
        }
        return neg ? -v : v;
    }

    Word atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a term");
        char c = s_[pos_];
        switch (c) {
            case 'a': ++pos_; return Word::gen(basis_, 0, 1);
            case 'b': ++pos_; return Word::gen(basis_, 1, 1);
            case 'A': ++pos_; return Word::gen(basis_, 0, -1);
            case 'B': ++pos_; return Word::gen(basis_, 1, -1);
            case '1': ++pos_; return Word(basis_);
            case 'R': ++pos_; return relator_in(basis_);
            case '(': {
                ++pos_;
                Word w = sequence();
                expect(')');
                return w;
            }
            case '[': {
                ++pos_;
                Word u = sequence();
                expect(',');
                Word v = sequence();
                expect(']');
                return comm(u, v);
            }
            case 'c':
                if (s_.substr(pos_, 5) == "conj(") {
                    pos_ += 5;
                    Word u = sequence();
                    expect(')');
                    return conj_relator(u);
                }
                break;
            default:
                break;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    BasisTag basis_;
    std::size_t pos_ = 0;
};

}  // namespace

Word Word::gen(BasisTag basis, int g, i64 exp) {
    Word w(basis);
    w.push(g, exp);
    return w;
}

Word Word::from_letters(BasisTag basis, const std::vector<int>& letters) {
    Word w(basis);
    for (int l : letters) w.push(std::abs(l) - 1, l > 0 ? 1 : -1);
    return w;
}

i64 Word::length() const {
    i64 n = 0;
    for (const auto& s : syl_) n += s.exp > 0 ? s.exp : -s.exp;
    return n;
}

std::vector<int> Word::letters() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(length()));
    for (const auto& s : syl_) {
        int l = s.gen + 1;
        for (i64 k = 0; k < (s.exp > 0 ? s.exp : -s.exp); ++k) out.push_back(s.exp > 0 ? l : -l);
    }
    return out;
}

i64 Word::exponent_sum(int g) const {
    i64 n = 0;
    for (const auto& s : syl_)
        if (s.gen == g) n += s.exp;
    return n;
}

void Word::push(int g, i64 exp) {
    if (exp == 0) return;
    if (!syl_.empty() && syl_.back().gen == g) {
        syl_.back().exp += exp;
        if (syl_.back().exp == 0) syl_.pop_back();
        return;
    }
    syl_.push_back({g, exp});
}

void Word::append(const Word& w) {
    for (const auto& s : w.syl_) push(s.gen, s.exp);
}

Word parse_word(std::string_view text, BasisTag basis) { return Parser(text, basis).parse(); }

std::string to_string(const Word& w) {
    if (w.is_identity()) return "1";
    std::string out;
    for (const auto& s : w.syllables()) {
        if (!out.empty()) out += ' ';
        if (s.exp == 1) {
            out += s.gen == 0 ? 'a' : 'b';
        } else if (s.exp == -1) {
            out += s.gen == 0 ? 'A' : 'B';
        } else {
            out += s.gen == 0 ? 'a' : 'b';
            out += '^';
            out += std::to_string(s.exp);
        }
    }
    return out;
}

Word mul(const Word& x, const Word& y) {
    require_same_basis(x, y);
    Word r = x;
    r.append(y);
    return r;
}

Word inv(const Word& w) {
    Word r(w.basis());
    const auto& s = w.syllables();
    for (auto it = s.rbegin(); it != s.rend(); ++it) r.push(it->gen, -it->exp);
    return r;
}

Word conj(const Word& u, const Word& w) { return mul(mul(u, w), inv(u)); }

Word comm(const Word& u, const Word& w) { return mul(mul(u, w), mul(inv(u), inv(w))); }

Word pow(const Word& w, i64 k) {
    Word base = k < 0 ? inv(w) : w;
    i64 e = k < 0 ? -k : k;
    Word result(w.basis());
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

CyclicReduction cyclic_reduce(const Word& w) {
    std::vector<Syllable> s = w.syllables();
    Word t(w.basis());
    std::size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && s[lo].gen == s[hi - 1].gen && sign_of(s[lo].exp) != sign_of(s[hi - 1].exp)) {
        i64 k = std::min(std::abs(s[lo].exp), std::abs(s[hi - 1].exp));
        i64 sg = sign_of(s[lo].exp);
        t.push(s[lo].gen, sg * k);
        s[lo].exp -= sg * k;
        s[hi - 1].exp += sg * k;
        if (s[lo].exp == 0) ++lo;
        if (s[hi - 1].exp == 0) --hi;
    }
    Word core(w.basis());
    for (std::size_t i = lo; i < hi; ++i) core.push(s[i].gen, s[i].exp);
    return {core, t};
}

std::optional<Word> square_root(const Word& w) {
    auto [core, t] = cyclic_reduce(w);
    std::vector<int> l = core.letters();
    if (l.size() % 2 != 0) return std::nullopt;
    std::size_t h = l.size() / 2;
    if (!std::equal(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(h), l.begin() + static_cast<std::ptrdiff_t>(h)))
        return std::nullopt;
    Word s0 = Word::from_letters(w.basis(), std::vector<int>(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(h)));
    return conj(t, s0);
}

int sgn(const Word& w) {
    if (w.basis().epsilon == 1) return 1;
    i64 n = w.basis().kind == Basis::Classic ? w.length() : w.exponent_sum(1);
    return n % 2 == 0 ? 1 : -1;
}

Word change_basis(const Word& w, BasisTag target) {
    if (w.basis().epsilon != target.epsilon) throw EpsilonMismatch("change_basis across different epsilon");
    if (w.basis().kind == target.kind) return w;
    Word out(target);
    if (target.epsilon == 1) {
        for (const auto& s : w.syllables()) out.push(s.gen, s.exp);
        return out;
    }
    // Classic -> adapted: a = alpha beta, b = beta^-1. Adapted -> classic: alpha = a b, beta = b^-1.
    // Both directions have the same shape: g0 -> g0 g1, g1 -> g1^-1.
    Word g0(target);
    g0.push(0, 1);
    g0.push(1, 1);
    Word g1 = Word::gen(target, 1, -1);
    for (const auto& s : w.syllables()) out.append(pow(s.gen == 0 ? g0 : g1, s.exp));
    return out;
}

Word relator(int epsilon) {
    BasisTag b = adapted(epsilon);
    Word w(b);
    w.push(0, 1);
    w.push(1, 1);
    w.push(0, -epsilon);
    w.push(1, -1);
    return w;
}

Word relator_in(BasisTag basis) { return change_basis(relator(basis.epsilon), basis); }

Word conj_relator(const Word& u) { return conj(u, relator_in(u.basis())); }

Word rhs_word(const EquationSpec& spec, const Word& v) {
    if (!(v.basis() == spec.basis())) throw BasisMismatch("v is not in the basis of the equation frame");
    Word r = relator_in(spec.basis());
    return mul(conj(v, pow(r, spec.theta)), r);
}

Word lhs_word(const EquationSpec& spec, const Word& first, const Word& second) {
    if (!(first.basis() == spec.basis()) || !(second.basis() == spec.basis()))
        throw BasisMismatch("unknowns are not in the basis of the equation frame");
    if (spec.delta == 1) return comm(first, second);
    if (spec.frame == Frame::OriginalZ) return mul(mul(first, first), mul(second, second));
    return mul(mul(first, second), mul(first, inv(second)));
}

std::pair<Word, Word> to_original(const EquationSpec& spec, const Word& x, const Word& y) {
    BasisTag c = classic(spec.epsilon);
    if (spec.delta == 1) return {change_basis(x, c), change_basis(y, c)};
    return {change_basis(mul(x, y), c), change_basis(inv(y), c)};
}

std::pair<Word, Word> to_adapted(const EquationSpec& spec, const Word& z1, const Word& z2) {
    BasisTag a = adapted(spec.epsilon);
    if (spec.delta == 1) return {change_basis(z1, a), change_basis(z2, a)};
    return {change_basis(mul(z1, z2), a), change_basis(inv(z2), a)};
}

Verification verify_solution(const EquationSpec& spec, const Word& v, const Word& first, const Word& second) {
    Verification out;
    out.holds = lhs_word(spec, first, second) == rhs_word(spec, v);
    if (spec.frame == Frame::OriginalZ) {
        out.faithful = sgn(first) == spec.delta && sgn(second) == spec.delta;
        out.faithful_z = out.faithful;
        return out;
    }
    out.faithful = sgn(second) == spec.delta;
    auto [z1, z2] = to_original(spec, first, second);
    out.faithful_z = sgn(z1) == spec.delta && sgn(z2) == spec.delta;
    out.x_in_N_applicable = true;
    out.x_in_N = project(first).is_identity();
    return out;
}

}  // namespace quadeq
