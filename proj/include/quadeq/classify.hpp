#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadeq/derived.hpp"
#include "quadeq/fgword.hpp"
#include "quadeq/wicks.hpp"

namespace quadeq {

struct Budgets {
    i64 wicks_len = kDefaultWicksBudget;
    i64 enum_bound = 8;
    std::optional<i64> L_window_override;
};

enum class Outcome { Exists, NotExists, Undetermined };
enum class Reason { AbelianObstruction, TableBranch, SecondDerivedUnsolvable, WicksExhaustive };

std::string to_string(Outcome o);
std::string to_string(Reason r);

// A pair of unknowns in the frame of the equation it was produced for.
struct Witness {
    Word first;
    Word second;
    // Table row or search that produced the pair, e.g. "table4.2d" or "wicks:6".
    std::string source;
};

struct Verdict {
    Outcome outcome = Outcome::Undetermined;
    std::optional<Reason> reason;
    // Table cell reached by the decision tree, e.g. "table2.4d"; "table2.2d:mixed" for mixed cells.
    std::string branch;
    std::optional<Witness> witness;
    // holds and the class matches; never false for an Exists verdict.
    bool verified = false;
    std::string certificate;
    std::optional<DecideResult> second_derived;
    Budgets searched;
};

// Decision tree: abelian obstruction, table branches, second derived equation, pattern witnesses,
// Wicks search. v is read in the basis of spec.frame; witnesses are returned in that frame.
Verdict classify(const EquationSpec& spec, const Word& v, const Budgets& budgets = {});

// Verified in-class pair from the explicit solution families (squares, powers, relator powers and
// the fixed rows), or nullopt. u is the free parameter of the (1, u) rows; the default tries alpha and beta.
std::optional<Witness> pattern_witness(const EquationSpec& spec, const Word& v, std::optional<Word> u = {});

struct FixtureRow {
    std::string id;
    EquationSpec spec;
    Word v;
    Word first;
    Word second;
    bool faithful = false;
};

struct TableReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

// All explicit solution cells of the tables, instantiated at small parameters.
std::vector<FixtureRow> table_fixtures();
// Substitution check of every fixture, including its class label and x in N for adapted rows.
TableReport verify_tables();

}  // namespace quadeq
