#include "quadeq/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "quadeq/classify.hpp"
#include "quadeq/derived.hpp"
#include "quadeq/grind.hpp"
#include "quadeq/surface.hpp"
#include "quadeq/wicks.hpp"

namespace quadeq {

namespace {

using Json = nlohmann::ordered_json;

enum class Output { Text, JsonLines };

struct SessionConfig {
    int epsilon = -1;
    int delta = 1;
    int theta = -1;
    SolutionClass cls = SolutionClass::Faithful;
    Frame frame = Frame::AdaptedXY;
    Budgets budgets;
    Output output = Output::JsonLines;

    EquationSpec spec() const { return {delta, epsilon, theta, cls, frame}; }
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

int parse_sign(const std::string& s) {
    if (s == "+1" || s == "1" || s == "+") return 1;
    if (s == "-1" || s == "-") return -1;
    throw UsageError("expected a sign (+1 or -1), got '" + s + "'");
}

std::string sign_text(int s) { return s > 0 ? "+1" : "-1"; }

Json budgets_json(const Budgets& b) {
    Json j;
    j["wicks_len"] = b.wicks_len;
    j["enum_bound"] = b.enum_bound;
    j["L_window_override"] = b.L_window_override ? Json(*b.L_window_override) : Json(nullptr);
    return j;
}

Json vbar_json(const Pi& x) { return Json{{"r", x.r}, {"s", x.s}}; }

std::string equation_text(const EquationSpec& s) {
    return "delta=" + sign_text(s.delta) + " epsilon=" + sign_text(s.epsilon) + " theta=" + sign_text(s.theta) +
           (s.cls == SolutionClass::Faithful ? " faithful" : " nonfaithful");
}

Json verdict_json(const std::string& input, const Word& v, const Verdict& r) {
    Json j;
    j["input"] = input;
    j["case"] = r.branch;
    j["vbar"] = vbar_json(project(v));
    j["verdict"] = to_string(r.outcome);
    if (r.reason) j["reason"] = to_string(*r.reason);
    if (r.witness)
        j["witness"] = Json{{"first", to_string(r.witness->first)},
                            {"second", to_string(r.witness->second)},
                            {"source", r.witness->source},
                            {"verified", r.verified}};
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    if (r.second_derived && r.outcome != Outcome::NotExists) j["second_derived"] = r.second_derived->trace;
    j["budgets"] = budgets_json(r.searched);
    return j;
}

std::string verdict_text(const std::string& input, const Verdict& r) {
    std::ostringstream o;
    o << input << ": " << to_string(r.outcome);
    if (r.reason) o << " (" << to_string(*r.reason) << ")";
    o << " [" << r.branch << "]";
    if (r.witness) o << " witness (" << to_string(r.witness->first) << ", " << to_string(r.witness->second) << ")";
    if (!r.certificate.empty()) o << " -- " << r.certificate;
    return o.str();
}

Json error_json(const std::string& input, const std::string& what) {
    return Json{{"input", input}, {"verdict", "error"}, {"error", what}};
}

void emit(std::ostream& out, const SessionConfig& cfg, const Json& j, const std::string& text) {
    if (cfg.output == Output::JsonLines) out << j.dump() << '\n';
    else out << text << '\n';
}

// Classifies one word; returns false on an error line.
bool classify_one(std::ostream& out, const SessionConfig& cfg, const std::string& input) {
    EquationSpec spec = cfg.spec();
    try {
        Word v = parse_word(input, spec.basis());
        Verdict r = classify(spec, v, cfg.budgets);
        emit(out, cfg, verdict_json(input, change_basis(v, adapted(spec.epsilon)), r), verdict_text(input, r));
        return true;
    } catch (const Error& e) {
        emit(out, cfg, error_json(input, e.what()), input + ": error -- " + e.what());
        return false;
    }
}

int cmd_classify(std::ostream& out, const SessionConfig& cfg, const std::optional<std::string>& word,
                 const std::optional<std::string>& batch) {
    if (word.has_value() == batch.has_value()) throw UsageError("classify needs exactly one of --word and --batch");
    if (word) return classify_one(out, cfg, *word) ? 0 : 1;
    std::ifstream in(*batch);
    if (!in) throw UsageError("cannot read batch file '" + *batch + "'");
    bool ok = true;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        ok = classify_one(out, cfg, line) && ok;
    }
    return ok ? 0 : 1;
}

int cmd_verify_tables(std::ostream& out, const SessionConfig& cfg) {
    TableReport rep = verify_tables();
    Json j{{"checked", rep.checked}, {"failures", rep.failures}};
    std::ostringstream t;
    for (const auto& f : rep.failures) t << "FAIL " << f << '\n';
    t << rep.checked << " fixtures checked, " << rep.failures.size() << " failures";
    emit(out, cfg, j, t.str());
    return rep.failures.empty() ? 0 : 1;
}

int cmd_wicks(std::ostream& out, const SessionConfig& cfg, const std::string& input) {
    EquationSpec spec = cfg.spec();
    spec.frame = Frame::AdaptedXY;
    Word v = change_basis(parse_word(input, cfg.spec().basis()), adapted(spec.epsilon));
    WicksResult r = wicks_search(spec, v, cfg.budgets.wicks_len);
    Json matches = Json::array();
    std::ostringstream t;
    t << "core length " << r.core_length << ", " << r.matches.size() << " matches";
    for (const auto& s : r.solutions) {
        const WicksMatch& m = r.matches[s.match_index];
        Json parts = Json::array();
        for (const auto& p : m.parts) parts.push_back(to_string(p));
        matches.push_back(Json{{"shift", m.shift},
                               {"form", to_string(m.form)},
                               {"parts", parts},
                               {"x", to_string(s.first)},
                               {"y", to_string(s.second)},
                               {"faithful", s.faithful}});
        t << "\n  shift " << m.shift << " " << to_string(m.form) << ": (" << to_string(s.first) << ", "
          << to_string(s.second) << ") " << (s.faithful ? "faithful" : "nonfaithful");
    }
    Json j;
    j["input"] = input;
    j["equation"] = equation_text(spec);
    j["vbar"] = vbar_json(project(v));
    j["core_length"] = r.core_length;
    j["exhaustive"] = r.exhaustive;
    j["matches"] = matches;
    j["budgets"] = budgets_json(cfg.budgets);
    emit(out, cfg, j, t.str());
    return 0;
}

int cmd_first_derived(std::ostream& out, const SessionConfig& cfg, const std::string& input) {
    ConjData cd = analyze_v(cfg.spec(), parse_word(input, cfg.spec().basis()));
    auto sols = first_solutions(cd.mc, cfg.budgets.enum_bound);
    Json arr = Json::array();
    std::ostringstream t;
    t << to_string(cd.mc) << ": " << sols.size() << " solutions";
    for (const auto& s : sols) {
        arr.push_back(Json{{"L", s.L ? Json(*s.L) : Json(nullptr)},
                           {"ell", s.ell},
                           {"xtilde", to_string(s.xtilde)},
                           {"ybar", vbar_json(s.ybar)},
                           {"x", to_string(s.x_word)},
                           {"y", to_string(s.y_word)}});
        t << "\n  ell=" << s.ell << " ybar=" << to_string(s.ybar) << " xtilde=" << to_string(s.xtilde);
    }
    Json j;
    j["input"] = input;
    j["case"] = to_string(cd.mc);
    j["vbar"] = vbar_json(cd.vbar);
    j["solutions"] = arr;
    j["budgets"] = budgets_json(cfg.budgets);
    emit(out, cfg, j, t.str());
    return 0;
}

int cmd_second_derived(std::ostream& out, const SessionConfig& cfg, const std::string& input) {
    ConjData cd = analyze_v(cfg.spec(), parse_word(input, cfg.spec().basis()));
    DecideResult r = second_decide(cd.mc, cd.V, cfg.budgets.L_window_override);
    Json j;
    j["input"] = input;
    j["case"] = to_string(cd.mc);
    j["vbar"] = vbar_json(cd.vbar);
    j["v0"] = to_string(cd.v0);
    j["V"] = to_string(cd.V);
    j["solvable"] = r.solvable;
    if (r.ell) j["ell"] = *r.ell;
    if (r.L) j["L"] = *r.L;
    j["trace"] = r.trace;
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    j["window_exhausted"] = r.window_exhausted;
    j["budgets"] = budgets_json(cfg.budgets);
    std::string t = to_string(cd.mc) + " V=" + to_string(cd.V) + ": " + (r.solvable ? "solvable" : "unsolvable") +
                    (r.certificate.empty() ? "" : " -- " + r.certificate);
    emit(out, cfg, j, t);
    return 0;
}

int cmd_qn(std::ostream& out, const SessionConfig& cfg, const std::string& input) {
    Word w = parse_word(input, adapted(cfg.epsilon));
    Ring r = q_n(w);
    emit(out, cfg, Json{{"input", input}, {"qn", to_string(r)}}, to_string(r));
    return 0;
}

int cmd_canon(std::ostream& out, const SessionConfig& cfg, const std::string& input) {
    Pi x = project(parse_word(input, cfg.spec().basis()));
    emit(out, cfg, Json{{"input", input}, {"vbar", vbar_json(x)}, {"canonical", to_string(canonical_word(x))}},
         to_string(x));
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quadratic equations in the free group of rank 2 with a relator conjugation parameter"};
    app.require_subcommand(1);
    SessionConfig cfg;
    std::string delta = "+1", epsilon = "-1", theta = "-1", cls = "faithful", frame = "adapted";
    std::optional<std::string> format;
    std::optional<std::string> word, batch;
    i64 L_override = -1;

    auto common = [&](CLI::App* sub, bool equation) {
        sub->add_option("--epsilon", epsilon, "relator sign epsilon")->capture_default_str();
        if (equation) {
            sub->add_option("--delta", delta, "equation sign delta")->capture_default_str();
            sub->add_option("--theta", theta, "exponent theta of the conjugated relator")->capture_default_str();
            sub->add_option("--class", cls, "solution class")
                ->check(CLI::IsMember({"faithful", "nonfaithful"}))
                ->capture_default_str();
        }
        sub->add_option("--frame,--basis", frame, "frame of words: adapted (x, y; alpha, beta) or original (z1, z2; a, b)")
            ->check(CLI::IsMember({"adapted", "original", "classic"}))
            ->capture_default_str();
        sub->add_option("--wicks-len", cfg.budgets.wicks_len, "longest right-hand side searched for Wicks forms")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--enum-bound", cfg.budgets.enum_bound, "enumeration bound for first derived solutions")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--L-window", L_override, "override of the L window half-width (default: automatic)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--format", format, "output: json (JSON lines) or text")->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* c = app.add_subcommand("classify", "classify the equation for one word or a batch file");
    common(c, true);
    auto* word_opt = c->add_option("--word", word, "conjugation parameter v");
    c->add_option("--batch", batch, "file with one word per line")->excludes(word_opt);

    CLI::App* vt = app.add_subcommand("verify-tables", "substitution check of every explicit table solution");
    vt->add_option("--format", format, "output: json or text")->check(CLI::IsMember({"json", "text"}));

    std::string single;
    for (auto [name, help, equation] : {std::tuple{"wicks", "Wicks decompositions and canonical solutions", true},
                                        std::tuple{"first-derived", "solutions of the first derived equation", true},
                                        std::tuple{"second-derived", "second derived equation decision", true},
                                        std::tuple{"qn", "image of a word of N in Z[pi]", false},
                                        std::tuple{"canon", "canonical form of the image in pi", false}}) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s, equation);
        s->add_option("--word", single, "word")->required();
    }

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        cfg.delta = parse_sign(delta);
        cfg.epsilon = parse_sign(epsilon);
        cfg.theta = parse_sign(theta);
        cfg.cls = cls == "faithful" ? SolutionClass::Faithful : SolutionClass::NonFaithful;
        cfg.frame = frame == "adapted" ? Frame::AdaptedXY : Frame::OriginalZ;
        if (L_override >= 0) cfg.budgets.L_window_override = L_override;

        std::string name = app.get_subcommands().front()->get_name();
        bool text_default = name == "qn" || name == "canon";
        cfg.output = format ? (*format == "text" ? Output::Text : Output::JsonLines)
                            : (text_default ? Output::Text : Output::JsonLines);

        if (name == "classify") return cmd_classify(out, cfg, word, batch);
        if (name == "verify-tables") return cmd_verify_tables(out, cfg);
        try {
            if (name == "wicks") return cmd_wicks(out, cfg, single);
            if (name == "first-derived") return cmd_first_derived(out, cfg, single);
            if (name == "second-derived") return cmd_second_derived(out, cfg, single);
            if (name == "qn") return cmd_qn(out, cfg, single);
            if (name == "canon") return cmd_canon(out, cfg, single);
        } catch (const Error& e) {
            emit(out, cfg, error_json(single, e.what()), single + ": error -- " + e.what());
            return 1;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace quadeq
