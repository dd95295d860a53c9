#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadeq/fgword.hpp"
#include "quadeq/grind.hpp"

namespace quadeq {

// The four families where solvability depends on more than the image of v in pi.
//   Eq2NF: delta=+1, eps=-1, non-faithful, vbar = beta^{2n}
//   Eq3NF: delta=-1, eps=+1, non-faithful, vbar = alpha^{2m} beta^{2n}
//   Eq4F:  delta=-1, eps=-1, faithful,     vbar = beta^{2n}
//   Eq4NF: delta=-1, eps=-1, non-faithful, vbar = alpha^{2m} beta^{4n}
// theta = -1 throughout.
struct MixedCase {
    enum class Kind { Eq2NF, Eq3NF, Eq4F, Eq4NF };

    Kind kind = Kind::Eq2NF;
    i64 m = 0;
    i64 n = 0;

    int delta() const { return kind == Kind::Eq2NF ? 1 : -1; }
    int epsilon() const { return kind == Kind::Eq3NF ? 1 : -1; }
    int theta() const { return -1; }
    SolutionClass cls() const { return kind == Kind::Eq4F ? SolutionClass::Faithful : SolutionClass::NonFaithful; }
    EquationSpec spec(Frame frame = Frame::AdaptedXY) const { return {delta(), epsilon(), theta(), cls(), frame}; }

    // Eq3NF/Eq4NF only: d = gcd(m, n) and c = alpha^{m/d} beta^{n/d} (resp. beta^{2n/d}).
    bool two_param() const { return kind == Kind::Eq3NF || kind == Kind::Eq4NF; }
    i64 d() const;
    Pi c_bar() const;
    Word c_word() const;
    // c^d: the translation of the orbit action in the two-parameter families.
    Pi u_bar() const;
    Pi vbar() const;
    // Greatest odd divisor of |n| and mu = n / ell_max, for Eq2NF/Eq4F with n != 0.
    i64 ell_max() const;
    i64 mu() const;
};

std::string to_string(MixedCase::Kind k);
std::string to_string(const MixedCase& mc);
// The mixed family matching (delta, eps, theta, class), if any.
std::optional<MixedCase::Kind> mixed_kind(const EquationSpec& spec);

struct ConjData {
    Word v;
    Pi vbar;
    MixedCase mc;
    Word v0;
    Ring V;
};

// v is read in the basis of spec.frame; v0 and V are in the adapted basis.
ConjData analyze_v(const EquationSpec& spec, const Word& v);

struct FirstSolution {
    std::optional<i64> L;
    i64 ell = 0;
    Ring xtilde;
    Pi ybar;
    Word x_word;
    Word y_word;
};

// Solutions of (1 - delta y) x = 1 + theta v in Z[pi], with representative words in the adapted basis.
std::vector<FirstSolution> first_solutions(const MixedCase& mc, i64 bound);

// k with vbar = ybar^k and theta delta^k = -1.
std::optional<i64> rank1_check(const Pi& vbar, const Pi& ybar, int delta, int theta);

struct DecideResult {
    bool solvable = false;
    std::optional<i64> ell;
    std::optional<i64> L;
    std::string trace;
    std::string certificate;
    // Unsolvable was concluded after exhausting the L window.
    bool window_exhausted = false;
};

// Solvability of the second derived equation for the family mc with V = q_n(v0^-1 v).
DecideResult second_decide(const MixedCase& mc, const Ring& V, std::optional<i64> L_window_override = {});

}  // namespace quadeq
