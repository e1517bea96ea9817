#pragma once

// Regular patterns over event names, compiled to a total DFA whose states are
// labelled match / fail / unknown.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pmon/monitor.hpp"

namespace pmon::regex {

struct Node {
  enum class Kind { symbol, epsilon, concat, alt, star, plus, optional };
  Kind kind = Kind::epsilon;
  std::string symbol;  // symbol kind only
  std::vector<std::unique_ptr<Node>> children;
};

using NodePtr = std::unique_ptr<Node>;

/// Grammar: alt := concat ('|' concat)*; concat := postfix+;
/// postfix := atom ('*' | '+' | '?')*; atom := name | 'ε' | '(' alt ')'.
/// Throws PatternSyntaxError with the byte offset of the problem.
NodePtr parse(std::string_view pattern);

/// Thompson NFA, subset construction over the whole alphabet (including a sink
/// for the empty subset), then co-reachability labelling: accepting states are
/// match, states that cannot reach an accepting state are fail, the rest unknown.
/// Throws UnknownEventInPattern for names outside `alphabet`.
TableMachine compile(const Node& ast, const std::vector<std::string>& alphabet);

TableMachine compile_regex(std::string_view pattern, const std::vector<std::string>& alphabet);

}  // namespace pmon::regex
