// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// coaltrace -- command-line driver for the trace-semantics library.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coaltrace/determinize.hh"
#include "coaltrace/io.hh"
#include "coaltrace/laws.hh"
#include "coaltrace/minimize.hh"
#include "coaltrace/semantics.hh"

using namespace coaltrace;
using Json = nlohmann::ordered_json;

namespace {

enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kValidation = 3,
    kBudget = 4,
    kLawFailure = 5,
    kUnknownState = 6,
};

/// Usage errors detected after flag parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string text(bool v) { return v ? "tt" : "ff"; }
std::string text(const Natural& v) { return v.str(); }
std::string text(const Rational& v) { return rational_fraction(v); }
std::string text(const PartialProb& v) { return rational_fraction(v.value()); }

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) { throw UsageError("cannot write " + path); }
    out << content;
}

StateId resolve_state(const std::vector<std::string>& names, const std::string& name) {
    if (auto id = find_name(names, name)) { return *id; }
    throw UnknownState("unknown state \"" + name + "\"");
}

IdSet resolve_states(const std::vector<std::string>& names, const std::vector<std::string>& wanted) {
    IdSet out;
    for (const auto& w : wanted) { out.insert(resolve_state(names, w)); }
    return out;
}

// ---- semantics -----------------------------------------------------------

struct SemanticsOpts {
    std::string file;
    std::string state;
    std::size_t depth = 3;
    std::string mode = "disj";
    std::string output;
    std::optional<std::string> separator;
};

using Rows = std::vector<std::pair<std::string, std::string>>;

template <class V>
Rows table_rows(const LanguageTable<V>& t, const std::vector<std::string>& alphabet,
                const std::optional<std::string>& separator) {
    Rows rows;
    t.for_each([&](const Word& w, const V& v) { rows.emplace_back(render_word(w, alphabet, separator), text(v)); });
    return rows;
}

Rows semantics_rows(const AutomatonFile& f, const SemanticsOpts& o) {
    const bool conj = o.mode == "conj";
    if (o.mode != "disj" && o.mode != "conj") { throw UsageError("--mode must be disj or conj"); }
    const auto& names = state_names(f.automaton);
    StateId x = resolve_state(names, o.state);
    return std::visit(
        [&](const auto& m) -> Rows {
            using T = std::decay_t<decltype(m)>;
            if constexpr (!std::is_same_v<T, Nfa>) {
                if (conj) { throw UsageError("--mode conj applies to nfa files only"); }
            }
            if constexpr (std::is_same_v<T, Nfa>) {
                return table_rows(bt_nfa_trace(m, x, o.depth, conj ? Branching::Conjunctive : Branching::Disjunctive),
                                  m.alphabet, o.separator);
            } else if constexpr (std::is_same_v<T, Lts>) {
                return table_rows(lts_traces(m, x, o.depth), m.alphabet, o.separator);
            } else if constexpr (std::is_same_v<T, AlternatingAut>) {
                return table_rows(alt_trace(m, x, o.depth), m.alphabet, o.separator);
            } else if constexpr (std::is_same_v<T, Gps>) {
                return table_rows(gps_trace(m, x, o.depth), m.alphabet, o.separator);
            } else if constexpr (requires { m.delta; }) {
                return table_rows(moore_trace(m, x, o.depth), m.alphabet, o.separator);
            } else if constexpr (requires { m.out; }) {
                return table_rows(wa_trace(m, x, o.depth), m.alphabet, o.separator);
            } else {
                auto t = wta_trace(m, x, o.depth);
                Rows rows;
                const auto& trees = t.trees();
                for (std::size_t i = 0; i < trees.trees.size(); ++i) {
                    rows.emplace_back(render_tree(trees.trees[i], m.signature), text(t.values()[i]));
                }
                return rows;
            }
        },
        f.automaton);
}

int run_semantics(const SemanticsOpts& o) {
    auto f = read_automaton_file(o.file);
    Rows rows = semantics_rows(f, o);
    for (const auto& [w, v] : rows) { std::cout << w << ": " << v << "\n"; }
    if (!o.output.empty()) {
        Json j;
        j["state"] = o.state;
        j["depth"] = o.depth;
        Json r = Json::array();
        for (const auto& [w, v] : rows) { r.push_back(Json::array({w, v})); }
        j["rows"] = r;
        write_text(o.output, j.dump(2) + "\n");
    }
    return kOk;
}

// ---- determinize ---------------------------------------------------------

struct DeterminizeOpts {
    std::string file;
    std::string method;
    std::size_t budget = kDefaultWeightedBudget;
    std::size_t bound = kDefaultCanonicalBound;
    std::string output;
    std::string sidecar;
};

struct DetOutput {
    AnyAutomaton machine;
    /// (original state, determinized state)
    std::vector<std::pair<std::string, std::string>> embed;
    /// (determinized state, meaning)
    std::vector<std::pair<std::string, std::string>> meaning;
};

/// States reachable from `seeds` in breadth-first order, and the renumbering.
template <class Successors>
std::pair<std::vector<StateId>, std::map<StateId, StateId>> reachable(const std::vector<StateId>& seeds,
                                                                      Successors&& successors) {
    std::vector<StateId> order;
    std::map<StateId, StateId> index;
    auto visit = [&](StateId d) {
        if (index.emplace(d, static_cast<StateId>(order.size())).second) { order.push_back(d); }
    };
    for (StateId d : seeds) { visit(d); }
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (StateId e : successors(order[i])) { visit(e); }
    }
    return {std::move(order), std::move(index)};
}

template <Semiring S>
MooreAut<S> restrict_machine(const MooreAut<S>& m, const std::vector<StateId>& order,
                             const std::map<StateId, StateId>& index) {
    MooreAut<S> out;
    out.alphabet = m.alphabet;
    for (StateId d : order) {
        out.states.push_back(m.states[d]);
        out.output.push_back(m.output[d]);
        std::vector<StateId> row;
        for (StateId e : m.delta[d]) { row.push_back(index.at(e)); }
        out.delta.push_back(std::move(row));
    }
    return out;
}

Nfa restrict_machine(const Nfa& n, const std::vector<StateId>& order, const std::map<StateId, StateId>& index) {
    Nfa out;
    out.alphabet = n.alphabet;
    for (StateId d : order) {
        out.states.push_back(n.states[d]);
        if (n.is_accepting(d)) { out.accepting.insert(index.at(d)); }
    }
    for (const auto& t : n.transitions) {
        if (index.count(t.from) != 0) { out.transitions.insert({index.at(t.from), t.label, index.at(t.to)}); }
    }
    return out;
}

std::vector<StateId> successors_of(const Nfa& n, StateId d) {
    std::vector<StateId> out;
    for (const auto& t : n.transitions) {
        if (t.from == d) { out.push_back(t.to); }
    }
    return out;
}

template <Semiring S>
std::vector<StateId> successors_of(const MooreAut<S>& m, StateId d) {
    return m.delta[d];
}

/// With an initial set, only the part reachable from its images is kept and
/// only initial states are listed in the embedding.
template <class Machine, class R, class Render>
DetOutput det_output(const Machine& machine, const std::vector<std::string>& source_states, const R& r,
                     const std::optional<IdSet>& initial, Render&& render) {
    std::vector<StateId> sources;
    for (std::size_t x = 0; x < r.embed.size(); ++x) {
        if (!initial || initial->count(static_cast<StateId>(x)) != 0) { sources.push_back(static_cast<StateId>(x)); }
    }
    std::vector<StateId> seeds;
    for (StateId x : sources) { seeds.push_back(r.embed[x]); }
    std::vector<StateId> order;
    std::map<StateId, StateId> index;
    if (initial) {
        std::tie(order, index) = reachable(seeds, [&](StateId d) { return successors_of(machine, d); });
    } else {
        for (StateId d = 0; d < machine.states.size(); ++d) {
            order.push_back(d);
            index.emplace(d, d);
        }
    }
    Machine kept = restrict_machine(machine, order, index);
    DetOutput out{AnyAutomaton{kept}, {}, {}};
    for (StateId x : sources) { out.embed.emplace_back(source_states[x], kept.states[index.at(r.embed[x])]); }
    for (StateId d : order) { out.meaning.emplace_back(machine.states[d], render(r.meaning[d])); }
    return out;
}

DetOutput determinize(const AutomatonFile& f, const DeterminizeOpts& o) {
    const std::string kind = kind_name(f.automaton);
    auto incompatible = [&] { return UsageError("method " + o.method + " does not apply to " + kind + " files"); };
    if (o.method == "subset" || o.method == "conj" || o.method == "canonical") {
        const auto* n = std::get_if<Nfa>(&f.automaton);
        if (n == nullptr) { throw incompatible(); }
        if (o.method == "canonical") {
            auto r = canonical_det_nfa(*n, o.bound);
            return det_output(r.machine, n->states, r, f.initial,
                              [&](const PredicateSet& p) { return render_predicates(p, n->states); });
        }
        auto r = det_subset(*n, o.method == "subset" ? Branching::Disjunctive : Branching::Conjunctive);
        return det_output(r.machine, n->states, r, f.initial,
                          [&](const StateSet& s) { return render_set(s, n->states); });
    }
    if (o.method == "alt") {
        const auto* a = std::get_if<AlternatingAut>(&f.automaton);
        if (a == nullptr) { throw incompatible(); }
        auto r = alt_to_nfa(*a, o.budget);
        return det_output(r.nfa, a->states, r, f.initial,
                          [&](const StateSet& s) { return render_set(s, a->states); });
    }
    if (o.method == "weighted") {
        return std::visit(
            [&](const auto& m) -> DetOutput {
                using T = std::decay_t<decltype(m)>;
                if constexpr (requires { m.out; }) {
                    auto r = det_weighted(m, o.budget);
                    return det_output(r.machine, m.states, r, f.initial,
                                      [&](const auto& v) { return render_vector(v, m.states); });
                } else {
                    (void)sizeof(T);
                    throw incompatible();
                }
            },
            f.automaton);
    }
    throw UsageError("unknown method " + o.method);
}

int run_determinize(const DeterminizeOpts& o) {
    auto f = read_automaton_file(o.file);
    DetOutput d = determinize(f, o);
    write_text(o.output, serialize_automaton(d.machine));
    if (!o.output.empty() && o.output != "-") {
        for (const auto& [x, y] : d.embed) { std::cout << x << " -> " << y << "\n"; }
    }
    if (!o.sidecar.empty()) {
        Json j;
        Json e = Json::array();
        for (const auto& [x, y] : d.embed) { e.push_back(Json::array({x, y})); }
        Json m = Json::array();
        for (const auto& [y, v] : d.meaning) { m.push_back(Json::array({y, v})); }
        j["embed"] = e;
        j["meaning"] = m;
        write_text(o.sidecar, j.dump(2) + "\n");
    }
    return kOk;
}

// ---- minimize / equiv ----------------------------------------------------

/// A Boolean Moore machine read as an NFA.
Nfa as_nfa(const Dfa& d) {
    Nfa n{d.states, d.alphabet, {}, {}};
    for (std::size_t x = 0; x < d.states.size(); ++x) {
        if (d.output[x]) { n.accepting.insert(static_cast<StateId>(x)); }
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            n.transitions.insert({static_cast<StateId>(x), static_cast<Label>(a), d.delta[x][a]});
        }
    }
    return n;
}

struct Language {
    Nfa nfa;
    IdSet initial;
};

Language language_of(const AutomatonFile& f, const std::vector<std::string>& initial_flag) {
    Nfa n;
    if (const auto* p = std::get_if<Nfa>(&f.automaton)) {
        n = *p;
    } else if (const auto* d = std::get_if<Dfa>(&f.automaton)) {
        n = as_nfa(*d);
    } else {
        throw UsageError("expected an nfa or a Boolean moore file, got " + kind_name(f.automaton));
    }
    IdSet init;
    if (!initial_flag.empty()) {
        init = resolve_states(n.states, initial_flag);
    } else if (f.initial) {
        init = *f.initial;
    } else {
        throw UsageError("no initial states: pass --initial or add \"initial\" to the file");
    }
    return {std::move(n), std::move(init)};
}

struct MinimizeOpts {
    std::string file;
    std::vector<std::string> initial;
    std::string output;
    std::string sidecar;
    bool observable_only = false;
};

int run_minimize(const MinimizeOpts& o) {
    auto f = read_automaton_file(o.file);
    auto lang = language_of(f, o.initial);
    auto m = o.observable_only ? brzozowski_observable(lang.nfa, lang.initial)
                               : brzozowski_minimal(lang.nfa, lang.initial);
    if (!verify_certificates(m)) { throw std::logic_error("certificate verification failed"); }
    write_text(o.output, serialize_automaton(AutomatonFile{m.dfa, IdSet{m.initial}}));
    std::vector<std::string> lines;
    for (const auto& c : m.certificates) {
        lines.push_back(m.dfa.states[c.first] + " " + m.dfa.states[c.second] + ": " +
                        render_word(c.word, m.dfa.alphabet));
    }
    if (!o.output.empty() && o.output != "-") {
        std::cout << "states: " << m.dfa.num_states() << "\n";
        for (const auto& l : lines) { std::cout << "certificate " << l << "\n"; }
    }
    if (!o.sidecar.empty()) {
        Json j;
        j["initial"] = m.dfa.states[m.initial];
        Json cs = Json::array();
        for (const auto& c : m.certificates) {
            cs.push_back(Json::array({m.dfa.states[c.first], m.dfa.states[c.second], render_word(c.word, m.dfa.alphabet)}));
        }
        j["certificates"] = cs;
        write_text(o.sidecar, j.dump(2) + "\n");
    }
    return kOk;
}

struct EquivOpts {
    std::string file1, file2;
    std::vector<std::string> initial1, initial2;
    std::optional<std::string> separator;
};

int run_equiv(const EquivOpts& o) {
    auto l1 = language_of(read_automaton_file(o.file1), o.initial1);
    auto l2 = language_of(read_automaton_file(o.file2), o.initial2);
    if (l1.nfa.alphabet != l2.nfa.alphabet) { throw UsageError("the two automata have different alphabets"); }
    auto m1 = brzozowski_minimal(l1.nfa, l1.initial);
    auto m2 = brzozowski_minimal(l2.nfa, l2.initial);
    auto r = dfa_equiv(m1.dfa, m2.dfa, m1.initial, m2.initial);
    if (r.equivalent) {
        std::cout << "tt\n";
    } else {
        std::cout << "ff " << render_word(*r.counterexample, l1.nfa.alphabet, o.separator) << "\n";
    }
    return kOk;
}

// ---- check ---------------------------------------------------------------

const char* const kChiWrongInstance = "X={a,b,c}, Y={d,e}, f(a)=d, f(b)=d, f(c)=e, S={{a,c},{b,c}}";

struct CheckOpts {
    std::string law;
    std::optional<std::size_t> max_size;
    std::size_t show = 10;
};

LawReport run_law(const CheckOpts& o) {
    auto size = [&](std::size_t dflt) { return o.max_size.value_or(dflt); };
    const std::string& l = o.law;
    if (l == "chi-good") { return check_naturality(chi_good_transform(), size(3)); }
    if (l == "chi-wrong") { return check_naturality(chi_wrong_transform(), size(3)); }
    if (l == "chi-distributes") { return check_chi_distributes(size(2)); }
    if (l == "action-diamond") { return check_action_laws(powerset_action(Modality::Diamond), "diamond", size(3)); }
    if (l == "action-box") { return check_action_laws(powerset_action(Modality::Box), "box", size(3)); }
    if (l == "action-nat") {
        return check_weighted_action_laws<NaturalSemiring>({Natural(0), Natural(1), Natural(2)}, size(2));
    }
    if (l == "morphism-diamond") { return check_monad_morphism(lifting(Modality::Diamond), "diamond", size(3)); }
    if (l == "morphism-box") { return check_monad_morphism(lifting(Modality::Box), "box", size(3)); }
    if (l == "logic-subset") { return check_logic_morphism_diagram(LogicDiagram::SubsetTau, size(2)); }
    if (l == "logic-conj") { return check_logic_morphism_diagram(LogicDiagram::ConjunctiveTau, size(2)); }
    if (l == "logic-weighted") { return check_logic_morphism_diagram(LogicDiagram::WeightedKappa, size(2)); }
    if (l == "logic-alt") { return check_logic_morphism_diagram(LogicDiagram::AltKappa, size(2)); }
    throw UsageError("unknown law " + l);
}

int run_check(const CheckOpts& o) {
    LawReport r = run_law(o);
    std::cout << r.summary() << "\n";
    if (o.law == "chi-wrong") {
        for (const auto& f : r.failures) {
            if (f.input == kChiWrongInstance) {
                std::cout << "expected failure: " << render_failure(f) << "\n";
                return kOk;
            }
        }
        std::cout << "expected failure not found\n";
        return kLawFailure;
    }
    for (std::size_t i = 0; i < r.failures.size() && i < o.show; ++i) {
        std::cout << "failure: " << render_failure(r.failures[i]) << "\n";
    }
    if (r.failures.size() > o.show) { std::cout << "... " << r.failures.size() - o.show << " more\n"; }
    return r.holds() ? kOk : kLawFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace semantics, determinization and minimization of finite automata"};
    app.require_subcommand(1);

    SemanticsOpts sem;
    auto* s = app.add_subcommand("semantics", "Print the depth-bounded trace table of one state");
    s->add_option("file", sem.file, "Automaton file")->required();
    s->add_option("--state", sem.state, "State name")->required();
    s->add_option("--depth", sem.depth, "Maximal word length or tree height");
    s->add_option("--mode", sem.mode, "Branching for nfa files: disj or conj");
    s->add_option("--output", sem.output, "Also write the rows as JSON");
    s->add_option("--separator", sem.separator, "Separator between letters of a word");

    DeterminizeOpts det;
    auto* d = app.add_subcommand("determinize", "Determinize an automaton");
    d->add_option("file", det.file, "Automaton file")->required();
    d->add_option("--method", det.method, "subset, conj, weighted, alt or canonical")->required();
    d->add_option("--budget", det.budget, "State budget for weighted and alt");
    d->add_option("--bound", det.bound, "Maximal source size for canonical");
    d->add_option("--output", det.output, "Output automaton file (default stdout)");
    d->add_option("--embedding", det.sidecar, "Write the embedding and state meanings as JSON");

    MinimizeOpts min;
    auto* m = app.add_subcommand("minimize", "Minimal DFA by double reversal, with distinguishing words");
    m->add_option("file", min.file, "nfa or Boolean moore file")->required();
    m->add_option("--initial", min.initial, "Initial states")->delimiter(',');
    m->add_option("--output", min.output, "Output automaton file (default stdout)");
    m->add_option("--certificates", min.sidecar, "Write the certificates as JSON");
    m->add_flag("--observable", min.observable_only, "Stop before the final reachability pass");

    EquivOpts eq;
    auto* e = app.add_subcommand("equiv", "Decide language equivalence");
    e->add_option("file1", eq.file1)->required();
    e->add_option("file2", eq.file2)->required();
    e->add_option("--initial1", eq.initial1, "Initial states of the first automaton")->delimiter(',');
    e->add_option("--initial2", eq.initial2, "Initial states of the second automaton")->delimiter(',');
    e->add_option("--separator", eq.separator, "Separator between letters of the counterexample");

    CheckOpts chk;
    auto* c = app.add_subcommand("check", "Run a finite law checker");
    c->add_option("law", chk.law, "Law name")->required();
    c->add_option("--max-size", chk.max_size, "Size bound of the enumeration");
    c->add_option("--show", chk.show, "Number of failures to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*s) { return run_semantics(sem); }
        if (*d) { return run_determinize(det); }
        if (*m) { return run_minimize(min); }
        if (*e) { return run_equiv(eq); }
        if (*c) { return run_check(chk); }
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kParse;
    } catch (const ValidationError& err) {
        std::cerr << "validation error:\n";
        for (const auto& v : err.violations()) { std::cerr << "  " << v << "\n"; }
        return kValidation;
    } catch (const BudgetExceeded& err) {
        std::cerr << "budget exceeded: " << err.what() << " (budget " << err.budget() << ")\n";
        return kBudget;
    } catch (const UnknownState& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUnknownState;
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
