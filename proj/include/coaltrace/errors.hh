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

#ifndef COALTRACE_ERRORS_HH_
#define COALTRACE_ERRORS_HH_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace coaltrace {

/// A queried state id is not a state of the automaton.
class UnknownState : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A tree or term does not match the arities of its signature.
class ArityMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A construction would materialize more states than it was allowed to.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::size_t budget)
        : std::runtime_error(what), budget_(budget) {}
    std::size_t budget() const { return budget_; }

private:
    std::size_t budget_;
};

/// Input text could not be read as an automaton file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An automaton failed structural validation.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) {
            if (!out.empty()) { out += "; "; }
            out += s;
        }
        return out;
    }
    std::vector<std::string> violations_;
};

} // namespace coaltrace

#endif // COALTRACE_ERRORS_HH_
