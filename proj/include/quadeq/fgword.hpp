#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadeq/error.hpp"

namespace quadeq {

using i64 = std::int64_t;

enum class Basis { Classic, Adapted };

// Generating set of F2. For epsilon = +1 both bases coincide.
struct BasisTag {
    Basis kind = Basis::Adapted;
    int epsilon = 1;

    friend bool operator==(const BasisTag&, const BasisTag&) = default;
};

inline BasisTag classic(int eps) { return {Basis::Classic, eps}; }
inline BasisTag adapted(int eps) { return {Basis::Adapted, eps}; }

// gen 0 is a (or alpha), gen 1 is b (or beta).
struct Syllable {
    int gen;
    i64 exp;

    friend bool operator==(const Syllable&, const Syllable&) = default;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Freely reduced word in F2, stored as maximal runs of one generator.
class Word {
public:
    Word() = default;
    explicit Word(BasisTag basis) : basis_(basis) {}

    static Word gen(BasisTag basis, int g, i64 exp = 1);
    // Letters are +-1 (a) and +-2 (b).
    static Word from_letters(BasisTag basis, const std::vector<int>& letters);

    BasisTag basis() const { return basis_; }
    const std::vector<Syllable>& syllables() const { return syl_; }
    bool is_identity() const { return syl_.empty(); }
    i64 length() const;
    std::vector<int> letters() const;
    i64 exponent_sum(int g) const;

    // Appends g^exp, cancelling against the tail.
    void push(int g, i64 exp);
    void append(const Word& w);

    friend bool operator==(const Word& x, const Word& y) {
        return x.basis_ == y.basis_ && x.syl_ == y.syl_;
    }
    friend bool operator<(const Word& x, const Word& y) { return x.letters() < y.letters(); }

private:
    BasisTag basis_{};
    std::vector<Syllable> syl_;
};

Word parse_word(std::string_view text, BasisTag basis);
std::string to_string(const Word& w);

Word mul(const Word& x, const Word& y);
Word inv(const Word& w);
Word conj(const Word& u, const Word& w);  // u w u^-1
Word comm(const Word& u, const Word& w);  // u w u^-1 w^-1
Word pow(const Word& w, i64 k);

inline Word operator*(const Word& x, const Word& y) { return mul(x, y); }

struct CyclicReduction {
    Word core;
    Word t;  // w = t core t^-1
};
CyclicReduction cyclic_reduce(const Word& w);
std::optional<Word> square_root(const Word& w);

int sgn(const Word& w);
Word change_basis(const Word& w, BasisTag target);

// alpha beta alpha^-eps beta^-1 in the adapted basis.
Word relator(int epsilon);
// The relator written in the requested basis.
Word relator_in(BasisTag basis);
// u R u^-1.
Word conj_relator(const Word& u);

enum class SolutionClass { Faithful, NonFaithful };
enum class Frame { OriginalZ, AdaptedXY };

struct EquationSpec {
    int delta = 1;
    int epsilon = 1;
    int theta = 1;
    SolutionClass cls = SolutionClass::Faithful;
    Frame frame = Frame::AdaptedXY;

    BasisTag basis() const { return frame == Frame::OriginalZ ? classic(epsilon) : adapted(epsilon); }
};

struct Verification {
    bool holds = false;
    // sgn(y) = delta in the adapted frame, sgn(z1) = sgn(z2) = delta in the original frame.
    bool faithful = false;
    // sgn(z1) = sgn(z2) = delta after converting the unknowns to z1, z2. Agrees with
    // `faithful` whenever x lies in N.
    bool faithful_z = false;
    bool x_in_N = false;
    bool x_in_N_applicable = false;
};

// Right-hand side v R^theta v^-1 R in the basis of spec.frame.
Word rhs_word(const EquationSpec& spec, const Word& v);
// Left-hand side Q_delta(first, second) in the basis of spec.frame.
Word lhs_word(const EquationSpec& spec, const Word& first, const Word& second);
Verification verify_solution(const EquationSpec& spec, const Word& v, const Word& first, const Word& second);

// Converts a pair of unknowns between frames. Words are re-expressed in the target basis.
std::pair<Word, Word> to_original(const EquationSpec& spec, const Word& x, const Word& y);
std::pair<Word, Word> to_adapted(const EquationSpec& spec, const Word& z1, const Word& z2);

}  // namespace quadeq
