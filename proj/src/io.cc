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

#include "coaltrace/io.hh"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace coaltrace {

using Json = nlohmann::ordered_json;

template <>
std::string weight_text<BooleanSemiring>(const bool& v) {
    return BooleanSemiring::to_string(v);
}
template <>
std::string weight_text<NaturalSemiring>(const Natural& v) {
    return v.str();
}
template <>
std::string weight_text<RationalSemiring>(const Rational& v) {
    return rational_fraction(v);
}

namespace {

template <class T>
struct SemiringOf;
template <Semiring S>
struct SemiringOf<MooreAut<S>> {
    using type = S;
};
template <Semiring S>
struct SemiringOf<WeightedAut<S>> {
    using type = S;
};
template <Semiring S>
struct SemiringOf<WeightedTreeAut<S>> {
    using type = S;
};

[[noreturn]] void shape_error(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

const Json& field(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) { shape_error("file", std::string("missing field \"") + key + "\""); }
    return *it;
}

const Json& array_field(const Json& obj, const char* key, bool required = true) {
    static const Json empty = Json::array();
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) { shape_error("file", std::string("missing field \"") + key + "\""); }
        return empty;
    }
    if (!it->is_array()) { shape_error(key, "expected an array"); }
    return *it;
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) { shape_error(where, "expected a string, got " + j.dump()); }
    return j.get<std::string>();
}

const Json& tuple(const Json& j, std::size_t size, const std::string& where) {
    if (!j.is_array() || j.size() != size) {
        shape_error(where, "expected an array of " + std::to_string(size) + " elements, got " + j.dump());
    }
    return j;
}

std::vector<std::string> names(const Json& arr, const std::string& where) {
    std::vector<std::string> out;
    for (const auto& j : arr) { out.push_back(as_string(j, where)); }
    return out;
}

/// Resolves names to ids, collecting unknown references as violations.
class Resolver {
public:
    Resolver(const std::vector<std::string>& table, std::string what, std::vector<std::string>& violations)
        : what_(std::move(what)), violations_(violations) {
        for (std::size_t i = 0; i < table.size(); ++i) { index_.emplace(table[i], static_cast<StateId>(i)); }
    }
    StateId operator()(const Json& j, const std::string& where) const {
        std::string name = as_string(j, where);
        auto it = index_.find(name);
        if (it == index_.end()) {
            violations_.push_back(where + ": unknown " + what_ + " \"" + name + "\"");
            return 0;
        }
        return it->second;
    }

private:
    std::map<std::string, StateId> index_;
    std::string what_;
    std::vector<std::string>& violations_;
};

template <Semiring S>
typename S::value_type read_weight(const Json& j, const std::string& where) {
    try {
        if constexpr (std::is_same_v<S, BooleanSemiring>) {
            if (!j.is_boolean()) { shape_error(where, "expected a JSON boolean weight, got " + j.dump()); }
            return j.get<bool>();
        } else {
            if (j.is_number_unsigned()) { return typename S::value_type(j.get<std::uint64_t>()); }
            return S::parse(as_string(j, where));
        }
    } catch (const std::invalid_argument& e) {
        shape_error(where, e.what());
    }
}

template <Semiring S>
Json write_weight(const typename S::value_type& v) {
    if constexpr (std::is_same_v<S, BooleanSemiring>) {
        return Json(static_cast<bool>(v));
    } else {
        return Json(weight_text<S>(v));
    }
}

void require(const std::vector<std::string>& violations) {
    if (!violations.empty()) { throw ValidationError(violations); }
}

Nfa parse_nfa(const Json& j, std::vector<std::string>& v) {
    Nfa n;
    n.states = names(array_field(j, "states"), "states");
    n.alphabet = names(array_field(j, "alphabet"), "alphabet");
    Resolver st(n.states, "state", v), lb(n.alphabet, "label", v);
    for (const auto& t : array_field(j, "transitions")) {
        tuple(t, 3, "transition");
        n.transitions.insert({st(t[0], "transition"), lb(t[1], "transition"), st(t[2], "transition")});
    }
    for (const auto& x : array_field(j, "accepting")) { n.accepting.insert(st(x, "accepting")); }
    return n;
}

Lts parse_lts(const Json& j, std::vector<std::string>& v) {
    Lts l;
    l.states = names(array_field(j, "states"), "states");
    l.alphabet = names(array_field(j, "alphabet"), "alphabet");
    Resolver st(l.states, "state", v), lb(l.alphabet, "label", v);
    for (const auto& t : array_field(j, "transitions")) {
        tuple(t, 3, "transition");
        l.transitions.insert({st(t[0], "transition"), lb(t[1], "transition"), st(t[2], "transition")});
    }
    return l;
}

template <Semiring S>
MooreAut<S> parse_moore(const Json& j, std::vector<std::string>& v) {
    MooreAut<S> m;
    m.states = names(array_field(j, "states"), "states");
    m.alphabet = names(array_field(j, "alphabet"), "alphabet");
    Resolver st(m.states, "state", v), lb(m.alphabet, "label", v);
    const std::size_t n = m.states.size();
    const auto missing = static_cast<StateId>(n);
    m.output.assign(n, S::zero());
    m.delta.assign(n, std::vector<StateId>(m.alphabet.size(), missing));
    for (const auto& o : array_field(j, "output")) {
        tuple(o, 2, "output");
        m.output[st(o[0], "output")] = read_weight<S>(o[1], "output");
    }
    for (const auto& t : array_field(j, "delta")) {
        tuple(t, 3, "delta");
        m.delta[st(t[0], "delta")][lb(t[1], "delta")] = st(t[2], "delta");
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
            if (m.delta[x][a] == missing) {
                v.push_back("delta: no successor of \"" + m.states[x] + "\" on \"" + m.alphabet[a] + "\"");
                m.delta[x][a] = 0;
            }
        }
    }
    return m;
}

template <Semiring S>
WeightedAut<S> parse_weighted(const Json& j, std::vector<std::string>& v) {
    WeightedAut<S> w;
    w.states = names(array_field(j, "states"), "states");
    w.alphabet = names(array_field(j, "alphabet"), "alphabet");
    Resolver st(w.states, "state", v), lb(w.alphabet, "label", v);
    w.out.assign(w.states.size(), S::zero());
    w.trans.assign(w.states.size(), std::vector<WeightVec<S>>(w.alphabet.size()));
    for (const auto& o : array_field(j, "final", false)) {
        tuple(o, 2, "final");
        StateId x = st(o[0], "final");
        w.out[x] = S::add(w.out[x], read_weight<S>(o[1], "final"));
    }
    for (const auto& t : array_field(j, "transitions")) {
        tuple(t, 4, "transition");
        StateId x = st(t[0], "transition");
        Label a = lb(t[1], "transition");
        w.trans[x][a].add(st(t[2], "transition"), read_weight<S>(t[3], "transition"));
    }
    return w;
}

template <Semiring S>
WeightedTreeAut<S> parse_wta(const Json& j, std::vector<std::string>& v) {
    WeightedTreeAut<S> w;
    w.states = names(array_field(j, "states"), "states");
    std::vector<std::string> ops;
    for (const auto& o : array_field(j, "signature")) {
        tuple(o, 2, "signature");
        if (!o[1].is_number_unsigned()) { shape_error("signature", "arity must be a natural number"); }
        w.signature.push_back({as_string(o[0], "signature"), o[1].get<std::uint32_t>()});
        ops.push_back(w.signature.back().name);
    }
    Resolver st(w.states, "state", v), op(ops, "operation", v);
    w.trans.assign(w.states.size(), {});
    for (const auto& t : array_field(j, "transitions")) {
        tuple(t, 4, "transition");
        StateId x = st(t[0], "transition");
        FlatTerm term{op(t[1], "transition"), {}};
        if (!t[2].is_array()) { shape_error("transition", "arguments must be an array"); }
        for (const auto& y : t[2]) { term.args.push_back(st(y, "transition")); }
        w.trans[x].add(term, read_weight<S>(t[3], "transition"));
    }
    return w;
}

AlternatingAut parse_alternating(const Json& j, std::vector<std::string>& v) {
    AlternatingAut a;
    a.states = names(array_field(j, "states"), "states");
    a.alphabet = names(array_field(j, "alphabet"), "alphabet");
    Resolver st(a.states, "state", v), lb(a.alphabet, "label", v);
    a.output.assign(a.states.size(), false);
    a.trans.assign(a.states.size(), std::vector<IdFamily>(a.alphabet.size()));
    for (const auto& x : array_field(j, "accepting")) { a.output[st(x, "accepting")] = true; }
    for (const auto& t : array_field(j, "transitions")) {
        tuple(t, 3, "transition");
        StateId x = st(t[0], "transition");
        Label l = lb(t[1], "transition");
        if (!t[2].is_array()) { shape_error("transition", "expected a list of clauses"); }
        for (const auto& clause : t[2]) {
            if (!clause.is_array()) { shape_error("transition", "a clause must be a list of states"); }
            IdSet inner;
            for (const auto& y : clause) { inner.insert(st(y, "transition")); }
            a.trans[x][l].insert(std::move(inner));
        }
    }
    return a;
}

PartialProb read_prob(const Json& j, const std::string& where) {
    Rational q = read_weight<RationalSemiring>(j, where);
    if (q < 0 || q > 1) { shape_error(where, "probability outside [0,1]: " + rational_fraction(q)); }
    return PartialProb(q);
}

void add_outcome(std::map<GpsOutcome, PartialProb>& dist, const GpsOutcome& o, const PartialProb& p) {
    auto it = dist.find(o);
    Rational total = p.value() + (it == dist.end() ? Rational(0) : it->second.value());
    if (total > 1) { shape_error("gps", "repeated outcome accumulates above 1"); }
    if (total != 0) { dist.insert_or_assign(o, PartialProb(total)); }
}

Gps parse_gps(const Json& j, std::vector<std::string>& v) {
    Gps g;
    g.states = names(array_field(j, "states"), "states");
    g.alphabet = names(array_field(j, "alphabet"), "alphabet");
    Resolver st(g.states, "state", v), lb(g.alphabet, "label", v);
    g.dist.assign(g.states.size(), {});
    for (const auto& t : array_field(j, "terminate", false)) {
        tuple(t, 2, "terminate");
        add_outcome(g.dist[st(t[0], "terminate")], std::nullopt, read_prob(t[1], "terminate"));
    }
    for (const auto& t : array_field(j, "transitions")) {
        tuple(t, 4, "transition");
        StateId x = st(t[0], "transition");
        GpsOutcome o = std::make_pair(lb(t[1], "transition"), st(t[2], "transition"));
        add_outcome(g.dist[x], o, read_prob(t[3], "transition"));
    }
    return g;
}

template <Semiring S>
AnyAutomaton parse_semiring_kind(const std::string& kind, const Json& j, std::vector<std::string>& v) {
    if (kind == "moore") { return parse_moore<S>(j, v); }
    if (kind == "weighted") { return parse_weighted<S>(j, v); }
    return parse_wta<S>(j, v);
}

Json name_array(const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& n : names) { out.push_back(n); }
    return out;
}

Json edges(const std::set<Transition>& ts, const std::vector<std::string>& states,
           const std::vector<std::string>& alphabet) {
    Json out = Json::array();
    for (const auto& t : ts) { out.push_back(Json::array({states[t.from], alphabet[t.label], states[t.to]})); }
    return out;
}

Json to_json(const Nfa& n) {
    Json j;
    j["kind"] = "nfa";
    j["alphabet"] = name_array(n.alphabet);
    j["states"] = name_array(n.states);
    j["transitions"] = edges(n.transitions, n.states, n.alphabet);
    Json acc = Json::array();
    for (StateId x : n.accepting) { acc.push_back(n.states[x]); }
    j["accepting"] = acc;
    return j;
}

Json to_json(const Lts& l) {
    Json j;
    j["kind"] = "lts";
    j["alphabet"] = name_array(l.alphabet);
    j["states"] = name_array(l.states);
    j["transitions"] = edges(l.transitions, l.states, l.alphabet);
    return j;
}

template <Semiring S>
Json to_json(const MooreAut<S>& m) {
    Json j;
    j["kind"] = "moore";
    j["semiring"] = std::string(S::name);
    j["alphabet"] = name_array(m.alphabet);
    j["states"] = name_array(m.states);
    Json out = Json::array();
    for (std::size_t x = 0; x < m.states.size(); ++x) { out.push_back(Json::array({m.states[x], write_weight<S>(m.output[x])})); }
    j["output"] = out;
    Json delta = Json::array();
    for (std::size_t x = 0; x < m.states.size(); ++x) {
        for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
            delta.push_back(Json::array({m.states[x], m.alphabet[a], m.states[m.delta[x][a]]}));
        }
    }
    j["delta"] = delta;
    return j;
}

template <Semiring S>
Json to_json(const WeightedAut<S>& w) {
    Json j;
    j["kind"] = "weighted";
    j["semiring"] = std::string(S::name);
    j["alphabet"] = name_array(w.alphabet);
    j["states"] = name_array(w.states);
    Json fin = Json::array();
    for (std::size_t x = 0; x < w.states.size(); ++x) {
        if (!is_zero<S>(w.out[x])) { fin.push_back(Json::array({w.states[x], write_weight<S>(w.out[x])})); }
    }
    j["final"] = fin;
    Json trans = Json::array();
    for (std::size_t x = 0; x < w.states.size(); ++x) {
        for (std::size_t a = 0; a < w.alphabet.size(); ++a) {
            for (const auto& [y, wt] : w.trans[x][a]) {
                trans.push_back(Json::array({w.states[x], w.alphabet[a], w.states[y], write_weight<S>(wt)}));
            }
        }
    }
    j["transitions"] = trans;
    return j;
}

template <Semiring S>
Json to_json(const WeightedTreeAut<S>& w) {
    Json j;
    j["kind"] = "wta";
    j["semiring"] = std::string(S::name);
    Json sig = Json::array();
    for (const auto& op : w.signature) { sig.push_back(Json::array({op.name, op.arity})); }
    j["signature"] = sig;
    j["states"] = name_array(w.states);
    Json trans = Json::array();
    for (std::size_t x = 0; x < w.states.size(); ++x) {
        for (const auto& [term, wt] : w.trans[x]) {
            Json args = Json::array();
            for (StateId y : term.args) { args.push_back(w.states[y]); }
            trans.push_back(Json::array({w.states[x], w.signature[term.op].name, args, write_weight<S>(wt)}));
        }
    }
    j["transitions"] = trans;
    return j;
}

Json to_json(const AlternatingAut& a) {
    Json j;
    j["kind"] = "alternating";
    j["alphabet"] = name_array(a.alphabet);
    j["states"] = name_array(a.states);
    Json acc = Json::array();
    for (std::size_t x = 0; x < a.states.size(); ++x) {
        if (a.output[x]) { acc.push_back(a.states[x]); }
    }
    j["accepting"] = acc;
    Json trans = Json::array();
    for (std::size_t x = 0; x < a.states.size(); ++x) {
        for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
            if (a.trans[x][l].empty()) { continue; }
            Json clauses = Json::array();
            for (const auto& inner : a.trans[x][l]) {
                Json c = Json::array();
                for (StateId y : inner) { c.push_back(a.states[y]); }
                clauses.push_back(c);
            }
            trans.push_back(Json::array({a.states[x], a.alphabet[l], clauses}));
        }
    }
    j["transitions"] = trans;
    return j;
}

Json to_json(const Gps& g) {
    Json j;
    j["kind"] = "gps";
    j["alphabet"] = name_array(g.alphabet);
    j["states"] = name_array(g.states);
    Json term = Json::array();
    Json trans = Json::array();
    for (std::size_t x = 0; x < g.states.size(); ++x) {
        for (const auto& [o, p] : g.dist[x]) {
            if (!o) {
                term.push_back(Json::array({g.states[x], rational_fraction(p.value())}));
            } else {
                trans.push_back(Json::array(
                    {g.states[x], g.alphabet[o->first], g.states[o->second], rational_fraction(p.value())}));
            }
        }
    }
    j["terminate"] = term;
    j["transitions"] = trans;
    return j;
}

} // namespace

std::string kind_name(const AnyAutomaton& a) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Nfa>) {
                return "nfa";
            } else if constexpr (std::is_same_v<T, Lts>) {
                return "lts";
            } else if constexpr (std::is_same_v<T, AlternatingAut>) {
                return "alternating";
            } else if constexpr (std::is_same_v<T, Gps>) {
                return "gps";
            } else {
                return to_json(m)["kind"].template get<std::string>();
            }
        },
        a);
}

std::string semiring_name(const AnyAutomaton& a) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (requires { typename SemiringOf<T>::type; }) {
                return std::string(SemiringOf<T>::type::name);
            } else {
                return "";
            }
        },
        a);
}

const std::vector<std::string>& state_names(const AnyAutomaton& a) {
    return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.states; }, a);
}

AutomatonFile parse_automaton(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) { throw ParseError("file: top level must be an object"); }
    try {
        const std::string kind = as_string(field(j, "kind"), "kind");
        std::vector<std::string> violations;
        AutomatonFile file{Nfa{}, std::nullopt};
        if (kind == "nfa") {
            file.automaton = parse_nfa(j, violations);
        } else if (kind == "lts") {
            file.automaton = parse_lts(j, violations);
        } else if (kind == "alternating") {
            file.automaton = parse_alternating(j, violations);
        } else if (kind == "gps") {
            file.automaton = parse_gps(j, violations);
        } else if (kind == "moore" || kind == "weighted" || kind == "wta") {
            const std::string sr = as_string(field(j, "semiring"), "semiring");
            if (sr == "bool") {
                file.automaton = parse_semiring_kind<BooleanSemiring>(kind, j, violations);
            } else if (sr == "nat") {
                file.automaton = parse_semiring_kind<NaturalSemiring>(kind, j, violations);
            } else if (sr == "rat") {
                file.automaton = parse_semiring_kind<RationalSemiring>(kind, j, violations);
            } else {
                throw ParseError("semiring: unknown semiring \"" + sr + "\"");
            }
        } else {
            throw ParseError("kind: unknown kind \"" + kind + "\"");
        }
        if (auto it = j.find("initial"); it != j.end()) {
            if (!it->is_array()) { throw ParseError("initial: expected an array"); }
            Resolver st(state_names(file.automaton), "state", violations);
            IdSet init;
            for (const auto& x : *it) { init.insert(st(x, "initial")); }
            file.initial = std::move(init);
        }
        require(violations);
        require(std::visit([](const auto& m) { return validate(m); }, file.automaton));
        return file;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed field: ") + e.what());
    }
}

AutomatonFile read_automaton_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) { throw ParseError("cannot read " + path); }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_automaton(buf.str());
}

std::string serialize_automaton(const AutomatonFile& file) {
    Json j = std::visit([](const auto& m) { return to_json(m); }, file.automaton);
    if (file.initial) {
        const auto& names = state_names(file.automaton);
        Json init = Json::array();
        for (StateId x : *file.initial) { init.push_back(names.at(x)); }
        j["initial"] = init;
    }
    return j.dump(2) + "\n";
}

std::string serialize_automaton(const AnyAutomaton& a) {
    return serialize_automaton(AutomatonFile{a, std::nullopt});
}

} // namespace coaltrace
