#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadeq/fgword.hpp"

namespace quadeq {

enum class WicksForm { OrientableABC, OrientableDE, NonOrientableABCBAC, NonOrientableAABCC };
enum class WicksKind { Commutator, TwoSquares };

std::string to_string(WicksForm f);

// A positional match of a cyclic permutation W_shift of a cyclically reduced word against a form:
//   ABC:    a b c a^-1 b^-1 c^-1      DE:    d e d^-1 e^-1
//   ABCBAC: a b c b a c^-1            AABCC: a a b c c b^-1
// parts holds (a, b, c) or (d, e). The original word is t U W_shift U^-1 t^-1.
struct WicksMatch {
    i64 shift = 0;
    WicksForm form = WicksForm::OrientableABC;
    std::vector<Word> parts;
    Word U;
    Word t;
};

// Concatenation of the form's pieces.
Word assemble(const WicksMatch& m);

// All matches over all cyclic shifts, ordered by (shift, form, parts). W must be cyclically reduced.
std::vector<WicksMatch> wicks_decompositions(const Word& W, WicksKind kind, bool allow_empty = false);

// Decomposes the cyclically reduced word and records t as the conjugator of every match.
std::vector<WicksMatch> wicks_decompositions(const CyclicReduction& cr, WicksKind kind, bool allow_empty = false);

// (first, second) with [first, second] (Commutator forms) or first^2 second^2 (TwoSquares forms)
// equal to t U W_shift U^-1 t^-1. Throws ExtractionFailed if that check fails.
std::pair<Word, Word> extract_solution(const WicksMatch& m);

struct WicksSolution {
    Word first;
    Word second;
    // Original-frame faithfulness: sgn(z1) = sgn(z2) = delta.
    bool faithful = false;
    bool x_in_N = false;
    std::size_t match_index = 0;
};

struct WicksResult {
    std::vector<WicksMatch> matches;
    std::vector<WicksSolution> solutions;
    bool exhaustive = false;
    i64 core_length = 0;
};

inline constexpr i64 kDefaultWicksBudget = 64;

// Canonical solutions of every Wicks decomposition of the right-hand side, in the equation's frame.
// Throws BudgetExceeded when the cyclically reduced right-hand side is longer than budget.
WicksResult wicks_search(const EquationSpec& spec, const Word& v, i64 budget = kDefaultWicksBudget,
                         bool allow_empty = false);

}  // namespace quadeq
