#include "pmon/regex.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>

#include "pmon/error.hpp"

namespace pmon::regex {

namespace {

constexpr std::string_view kEpsilon = "\xCE\xB5";  // U+03B5

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    skip_ws();
    if (pos_ == text_.size()) throw PatternSyntaxError(pos_, "empty pattern");
    auto root = alternation();
    skip_ws();
    if (pos_ != text_.size())
      throw PatternSyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_atom_start() {
    skip_ws();
    if (pos_ == text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == '_' || std::isalpha(static_cast<unsigned char>(c)) ||
           text_.substr(pos_).starts_with(kEpsilon);
  }

  static NodePtr make(Node::Kind kind) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    return n;
  }

  NodePtr alternation() {
    auto first = concatenation();
    skip_ws();
    if (pos_ == text_.size() || text_[pos_] != '|') return first;
    auto alt = make(Node::Kind::alt);
    alt->children.push_back(std::move(first));
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      alt->children.push_back(concatenation());
      skip_ws();
    }
    return alt;
  }

  NodePtr concatenation() {
    if (!at_atom_start()) throw PatternSyntaxError(pos_, "expected an event name, 'ε' or '('");
    auto first = postfix();
    if (!at_atom_start()) return first;
    auto cat = make(Node::Kind::concat);
    cat->children.push_back(std::move(first));
    while (at_atom_start()) cat->children.push_back(postfix());
    return cat;
  }

  NodePtr postfix() {
    auto node = atom();
    for (;;) {
      skip_ws();
      if (pos_ == text_.size()) return node;
      Node::Kind kind;
      switch (text_[pos_]) {
        case '*': kind = Node::Kind::star; break;
        case '+': kind = Node::Kind::plus; break;
        case '?': kind = Node::Kind::optional; break;
        default: return node;
      }
      ++pos_;
      auto wrap = make(kind);
      wrap->children.push_back(std::move(node));
      node = std::move(wrap);
    }
  }

  NodePtr atom() {
    skip_ws();
    if (text_.substr(pos_).starts_with(kEpsilon)) {
      pos_ += kEpsilon.size();
      return make(Node::Kind::epsilon);
    }
    if (text_[pos_] == '(') {
      std::size_t open = pos_++;
      auto inner = alternation();
      skip_ws();
      if (pos_ == text_.size() || text_[pos_] != ')')
        throw PatternSyntaxError(open, "unbalanced '('");
      ++pos_;
      return inner;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    auto n = make(Node::Kind::symbol);
    n->symbol = std::string(text_.substr(start, pos_ - start));
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Thompson construction; state 0 is unused so that -1 can mean "none".
struct Nfa {
  struct State {
    int symbol = -1;  // event id on the single labelled edge, -1 if none
    int target = -1;
    std::vector<int> eps;
  };
  std::vector<State> states;

  int add() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }
};

struct Fragment {
  int start, accept;
};

Fragment build(const Node& node, Nfa& nfa, const std::map<std::string, int>& ids) {
  using K = Node::Kind;
  switch (node.kind) {
    case K::symbol: {
      auto it = ids.find(node.symbol);
      if (it == ids.end()) throw UnknownEventInPattern("event '" + node.symbol + "' is not declared");
      int s = nfa.add(), a = nfa.add();
      nfa.states[s].symbol = it->second;
      nfa.states[s].target = a;
      return {s, a};
    }
    case K::epsilon: {
      int s = nfa.add(), a = nfa.add();
      nfa.states[s].eps.push_back(a);
      return {s, a};
    }
    case K::concat: {
      Fragment whole = build(*node.children.front(), nfa, ids);
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        Fragment next = build(*node.children[i], nfa, ids);
        nfa.states[whole.accept].eps.push_back(next.start);
        whole.accept = next.accept;
      }
      return whole;
    }
    case K::alt: {
      int s = nfa.add(), a = nfa.add();
      for (const auto& child : node.children) {
        Fragment f = build(*child, nfa, ids);
        nfa.states[s].eps.push_back(f.start);
        nfa.states[f.accept].eps.push_back(a);
      }
      return {s, a};
    }
    case K::star:
    case K::plus:
    case K::optional: {
      Fragment inner = build(*node.children.front(), nfa, ids);
      int s = nfa.add(), a = nfa.add();
      nfa.states[s].eps.push_back(inner.start);
      nfa.states[inner.accept].eps.push_back(a);
      if (node.kind != K::plus) nfa.states[s].eps.push_back(a);
      if (node.kind != K::optional) nfa.states[inner.accept].eps.push_back(inner.start);
      return {s, a};
    }
  }
  throw PatternSyntaxError(0, "unreachable node kind");
}

std::vector<int> eps_closure(const Nfa& nfa, std::vector<int> seeds) {
  std::vector<char> seen(nfa.states.size(), 0);
  std::vector<int> out;
  while (!seeds.empty()) {
    int s = seeds.back();
    seeds.pop_back();
    if (seen[s]) continue;
    seen[s] = 1;
    out.push_back(s);
    for (int t : nfa.states[s].eps) seeds.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

NodePtr parse(std::string_view pattern) { return Parser(pattern).run(); }

TableMachine compile(const Node& ast, const std::vector<std::string>& alphabet) {
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < alphabet.size(); ++i) ids.emplace(alphabet[i], static_cast<int>(i));

  Nfa nfa;
  nfa.add();
  const Fragment frag = build(ast, nfa, ids);

  TableMachine dfa;
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> subset) {
    auto [it, inserted] = index.try_emplace(subset, static_cast<int>(subsets.size()));
    if (inserted) subsets.push_back(std::move(subset));
    return it->second;
  };

  dfa.initial = intern(eps_closure(nfa, {frag.start}));
  for (std::size_t q = 0; q < subsets.size(); ++q) {
    std::vector<int> row(alphabet.size());
    for (std::size_t ev = 0; ev < alphabet.size(); ++ev) {
      std::vector<int> moved;
      for (int s : subsets[q])
        if (nfa.states[s].symbol == static_cast<int>(ev)) moved.push_back(nfa.states[s].target);
      row[ev] = intern(eps_closure(nfa, std::move(moved)));
    }
    dfa.next.push_back(std::move(row));
  }

  const std::size_t n = subsets.size();
  std::vector<char> accepting(n), live(n);
  for (std::size_t q = 0; q < n; ++q)
    accepting[q] = std::binary_search(subsets[q].begin(), subsets[q].end(), frag.accept);

  // Backward reachability from the accepting states.
  std::vector<std::vector<int>> preds(n);
  for (std::size_t q = 0; q < n; ++q)
    for (int t : dfa.next[q]) preds[t].push_back(static_cast<int>(q));
  std::queue<int> work;
  for (std::size_t q = 0; q < n; ++q)
    if (accepting[q]) {
      live[q] = 1;
      work.push(static_cast<int>(q));
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop();
    for (int p : preds[q])
      if (!live[p]) {
        live[p] = 1;
        work.push(p);
      }
  }

  for (std::size_t q = 0; q < n; ++q) {
    dfa.state_names.push_back("q" + std::to_string(q));
    dfa.label.push_back(accepting[q] ? VerdictTag::match
                        : live[q]    ? VerdictTag::unknown
                                     : VerdictTag::fail);
  }
  return dfa;
}

TableMachine compile_regex(std::string_view pattern, const std::vector<std::string>& alphabet) {
  return compile(*parse(pattern), alphabet);
}

}  // namespace pmon::regex
