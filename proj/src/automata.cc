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

#include "coaltrace/automata.hh"

#include <algorithm>

namespace coaltrace {

namespace {

std::string name_or_id(const std::vector<std::string>& names, std::size_t id) {
    return id < names.size() ? names[id] : "#" + std::to_string(id);
}

std::string edge_text(const std::vector<std::string>& states, const std::vector<std::string>& alphabet,
                      const Transition& t) {
    return "(" + name_or_id(states, t.from) + ", " + name_or_id(alphabet, t.label) + ", " +
           name_or_id(states, t.to) + ")";
}

void check_names(const std::vector<std::string>& names, const char* what, std::vector<std::string>& out) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) { out.push_back(std::string("duplicate ") + what + " name '" + n + "'"); }
    }
}

void check_edges(const std::set<Transition>& edges, const std::vector<std::string>& states,
                 const std::vector<std::string>& alphabet, std::vector<std::string>& out) {
    for (const auto& t : edges) {
        if (t.from >= states.size() || t.to >= states.size()) {
            out.push_back("transition " + edge_text(states, alphabet, t) + " has an endpoint outside the states");
        } else if (t.label >= alphabet.size()) {
            out.push_back("transition " + edge_text(states, alphabet, t) + " uses a label outside the alphabet");
        }
    }
}

SuccessorTable build_successors(std::size_t n, std::size_t letters, const std::set<Transition>& edges) {
    SuccessorTable table(n, std::vector<StateSet>(letters, StateSet(n)));
    for (const auto& t : edges) { table[t.from][t.label].insert(t.to); }
    return table;
}

} // namespace

SuccessorTable Nfa::successor_table() const {
    return build_successors(num_states(), alphabet.size(), transitions);
}

SuccessorTable Lts::successor_table() const {
    return build_successors(num_states(), alphabet.size(), transitions);
}

Family AlternatingAut::family(StateId x, Label a) const {
    Family f;
    for (const auto& inner : trans[x][a]) { f.insert(StateSet::of(num_states(), inner)); }
    return f;
}

std::size_t Tree::height() const {
    std::size_t h = 0;
    for (const auto& c : children) { h = std::max(h, c.height() + 1); }
    return h;
}

bool operator==(const Tree& a, const Tree& b) {
    return a.op == b.op && a.children == b.children;
}

bool operator<(const Tree& a, const Tree& b) {
    if (a.op != b.op) { return a.op < b.op; }
    return std::lexicographical_compare(a.children.begin(), a.children.end(), b.children.begin(),
                                        b.children.end());
}

Tree leaf(OpId op) {
    return Tree{op, {}};
}

Tree node(OpId op, std::vector<Tree> children) {
    return Tree{op, std::move(children)};
}

std::string render_tree(const Tree& t, const Signature& sig) {
    std::string out = t.op < sig.size() ? sig[t.op].name : "#" + std::to_string(t.op);
    if (t.children.empty()) { return out; }
    out += "(";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i > 0) { out += ","; }
        out += render_tree(t.children[i], sig);
    }
    return out + ")";
}

std::vector<std::string> validate(const Nfa& n) {
    std::vector<std::string> v;
    check_names(n.states, "state", v);
    check_names(n.alphabet, "label", v);
    check_edges(n.transitions, n.states, n.alphabet, v);
    for (StateId x : n.accepting) {
        if (x >= n.num_states()) { v.push_back("accepting state #" + std::to_string(x) + " is not a state"); }
    }
    return v;
}

std::vector<std::string> validate(const Lts& l) {
    std::vector<std::string> v;
    check_names(l.states, "state", v);
    check_names(l.alphabet, "label", v);
    check_edges(l.transitions, l.states, l.alphabet, v);
    return v;
}

std::vector<std::string> validate(const AlternatingAut& a) {
    std::vector<std::string> v;
    const std::size_t n = a.num_states();
    check_names(a.states, "state", v);
    check_names(a.alphabet, "label", v);
    if (a.output.size() != n) { v.push_back("output does not cover every state"); }
    if (a.trans.size() != n) { v.push_back("trans does not cover every state"); }
    for (std::size_t x = 0; x < a.trans.size(); ++x) {
        if (a.trans[x].size() != a.alphabet.size()) {
            v.push_back("trans of state " + name_or_id(a.states, x) + " does not cover the alphabet");
            continue;
        }
        for (std::size_t l = 0; l < a.trans[x].size(); ++l) {
            for (const auto& inner : a.trans[x][l]) {
                for (StateId y : inner) {
                    if (y >= n) {
                        v.push_back("trans(" + name_or_id(a.states, x) + ", " + name_or_id(a.alphabet, l) +
                                    ") mentions unknown state #" + std::to_string(y));
                    }
                }
            }
        }
    }
    return v;
}

std::vector<std::string> validate(const Gps& g) {
    std::vector<std::string> v;
    const std::size_t n = g.num_states();
    check_names(g.states, "state", v);
    check_names(g.alphabet, "label", v);
    if (g.dist.size() != n) { v.push_back("dist does not cover every state"); }
    for (std::size_t x = 0; x < g.dist.size(); ++x) {
        Rational total = 0;
        for (const auto& [outcome, p] : g.dist[x]) {
            if (outcome && (outcome->first >= g.alphabet.size() || outcome->second >= n)) {
                v.push_back("state " + name_or_id(g.states, x) + " has an outcome outside A x X + 1");
            }
            total += p.value();
        }
        if (total != 1) {
            v.push_back("distribution of state " + name_or_id(g.states, x) + " sums to " + total.str() +
                        ", expected 1");
        }
    }
    return v;
}

std::vector<std::string> validate(const Tree& t, const Signature& sig) {
    std::vector<std::string> v;
    if (t.op >= sig.size()) {
        v.push_back("tree uses unknown operation #" + std::to_string(t.op));
        return v;
    }
    if (t.children.size() != sig[t.op].arity) {
        v.push_back(sig[t.op].name + " applied to " + std::to_string(t.children.size()) + " subtrees, arity " +
                    std::to_string(sig[t.op].arity));
    }
    for (const auto& c : t.children) {
        auto sub = validate(c, sig);
        v.insert(v.end(), sub.begin(), sub.end());
    }
    return v;
}

ReversedNfa reverse_nfa(const Nfa& n, const IdSet& initial) {
    ReversedNfa r;
    r.nfa.states = n.states;
    r.nfa.alphabet = n.alphabet;
    for (const auto& t : n.transitions) { r.nfa.transitions.insert(Transition{t.to, t.label, t.from}); }
    r.nfa.accepting = initial;
    r.initial = n.accepting;
    return r;
}

std::optional<StateId> find_name(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) { return std::nullopt; }
    return static_cast<StateId>(it - names.begin());
}

std::string render_word(const Word& w, const std::vector<std::string>& alphabet,
                        const std::optional<std::string>& separator) {
    if (w.empty()) { return "ε"; }
    bool single = true;
    for (Label a : w) { single = single && name_or_id(alphabet, a).size() == 1; }
    const std::string sep = separator ? *separator : (single ? "" : "·");
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) { out += sep; }
        out += name_or_id(alphabet, w[i]);
    }
    return out;
}

std::vector<std::string> numbered_names(std::size_t n, const std::string& prefix) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) { out.push_back(prefix + std::to_string(i)); }
    return out;
}

} // namespace coaltrace
