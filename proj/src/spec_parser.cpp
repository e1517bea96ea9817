#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "pmon/error.hpp"
#include "pmon/monitor.hpp"
#include "pmon/regex.hpp"

namespace pmon {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct FsmLines {
  struct Trans {
    std::size_t line;
    std::string from, event, to;
  };
  std::vector<std::string> states;
  std::map<std::string, VerdictTag> labels;
  std::vector<Trans> trans;
  std::optional<std::string> initial;
  std::size_t first_line = 0;
};

TableMachine build_fsm(const FsmLines& fsm, const MonitorSpec& spec) {
  if (fsm.states.empty()) throw SpecSyntaxError(0, "fsm monitor declares no states");
  if (!fsm.initial) throw SpecSyntaxError(0, "fsm monitor has no initial state");
  std::map<std::string, int> ids;
  TableMachine m;
  for (const auto& s : fsm.states) {
    ids.emplace(s, static_cast<int>(m.state_names.size()));
    m.state_names.push_back(s);
    auto it = fsm.labels.find(s);
    m.label.push_back(it == fsm.labels.end() ? VerdictTag::unknown : it->second);
  }
  const std::size_t n_events = spec.events.size();
  m.next.assign(fsm.states.size(), std::vector<int>(n_events, -1));
  for (const auto& t : fsm.trans) {
    auto from = ids.find(t.from);
    auto to = ids.find(t.to);
    if (from == ids.end()) throw SpecSyntaxError(t.line, "unknown state '" + t.from + "'");
    if (to == ids.end()) throw SpecSyntaxError(t.line, "unknown state '" + t.to + "'");
    int ev = spec.event_id(t.event);
    if (ev < 0) throw SpecSyntaxError(t.line, "undeclared event '" + t.event + "'");
    int& slot = m.next[static_cast<std::size_t>(from->second)][static_cast<std::size_t>(ev)];
    if (slot >= 0)
      throw SpecSyntaxError(t.line, "second transition from " + t.from + " on " + t.event);
    slot = to->second;
  }
  for (const auto& [name, tag] : fsm.labels)
    if (!ids.contains(name)) throw SpecSyntaxError(0, "label for unknown state '" + name + "'");
  m.initial = ids.at(*fsm.initial);

  // Missing transitions go to an implicit fail sink.
  bool partial = std::any_of(m.next.begin(), m.next.end(), [](const auto& row) {
    return std::find(row.begin(), row.end(), -1) != row.end();
  });
  if (partial) {
    int sink = static_cast<int>(m.state_names.size());
    m.state_names.push_back("<sink>");
    m.label.push_back(VerdictTag::fail);
    m.next.emplace_back(n_events, sink);
    for (auto& row : m.next)
      for (auto& t : row)
        if (t < 0) t = sink;
  }
  return m;
}

}  // namespace

MonitorSpec parse_property_spec(std::string_view text) {
  MonitorSpec spec;
  bool have_name = false, have_params = false, have_kind = false, have_report = false;
  std::optional<std::string> success_event;
  FsmLines fsm;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto colon = line.find(':');
    auto space = line.find_first_of(" \t");
    std::string_view keyword = line.substr(0, std::min(colon, space));
    std::string_view rest = trim(line.substr(std::min(line.size(), keyword.size() + (colon == keyword.size() ? 1 : 0))));

    if (keyword == "property") {
      if (have_name) throw SpecSyntaxError(lineno, "second property line");
      if (!is_identifier(rest)) throw SpecSyntaxError(lineno, "bad property name");
      spec.name = std::string(rest);
      have_name = true;
    } else if (keyword == "params") {
      if (have_params) throw SpecSyntaxError(lineno, "second params line");
      for (auto& p : split_list(rest)) {
        if (!is_identifier(p)) throw SpecSyntaxError(lineno, "bad parameter name '" + p + "'");
        if (std::find(spec.params.begin(), spec.params.end(), p) != spec.params.end())
          throw SpecSyntaxError(lineno, "parameter " + p + " listed twice");
        spec.params.push_back(std::move(p));
      }
      have_params = true;
    } else if (keyword == "event") {
      auto open = rest.find('(');
      auto close = rest.rfind(')');
      if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
          !trim(rest.substr(close + 1)).empty())
        throw SpecSyntaxError(lineno, "expected event <name>(<params>)");
      EventDecl decl{std::string(trim(rest.substr(0, open))), split_list(rest.substr(open + 1, close - open - 1))};
      if (!is_identifier(decl.name)) throw SpecSyntaxError(lineno, "bad event name '" + decl.name + "'");
      for (const auto& p : decl.params) {
        if (std::find(spec.params.begin(), spec.params.end(), p) == spec.params.end())
          throw UndeclaredParameter(lineno, "parameter " + p + " of event " + decl.name + " is not in params");
        if (std::count(decl.params.begin(), decl.params.end(), p) > 1)
          throw SpecSyntaxError(lineno, "parameter " + p + " listed twice for " + decl.name);
      }
      for (const auto& e : spec.events)
        if (e.name == decl.name) throw DuplicateEventDecl(lineno, "event " + decl.name + " declared twice");
      spec.events.push_back(std::move(decl));
      spec.index_events();
    } else if (keyword == "monitor") {
      if (have_kind) throw SpecSyntaxError(lineno, "second monitor line");
      if (rest == "fsm") spec.kind = MonitorKind::fsm;
      else if (rest == "regex") spec.kind = MonitorKind::regex;
      else if (rest == "balance") spec.kind = MonitorKind::balance;
      else if (rest == "ratio") spec.kind = MonitorKind::ratio;
      else throw SpecSyntaxError(lineno, "unknown monitor kind '" + std::string(rest) + "'");
      have_kind = true;
    } else if (keyword == "pattern") {
      if (!spec.pattern.empty()) throw SpecSyntaxError(lineno, "second pattern line");
      if (rest.empty()) throw SpecSyntaxError(lineno, "empty pattern");
      spec.pattern = std::string(rest);
    } else if (keyword == "report") {
      if (have_report) throw SpecSyntaxError(lineno, "second report line");
      for (const auto& t : split_list(rest)) {
        auto tag = verdict_tag_from(t);
        if (!tag) throw SpecSyntaxError(lineno, "unknown verdict '" + t + "'");
        spec.trigger_set.insert(*tag);
      }
      have_report = true;
    } else if (keyword == "success") {
      success_event = std::string(rest);
    } else if (keyword == "state") {
      auto words = split_list(rest);
      if (words.empty() || words.size() > 2 || (words.size() == 2 && words[1] != "initial"))
        throw SpecSyntaxError(lineno, "expected state <name> [initial]");
      if (std::find(fsm.states.begin(), fsm.states.end(), words[0]) != fsm.states.end())
        throw SpecSyntaxError(lineno, "state " + words[0] + " declared twice");
      if (words.size() == 2) {
        if (fsm.initial) throw SpecSyntaxError(lineno, "second initial state");
        fsm.initial = words[0];
      }
      if (!fsm.first_line) fsm.first_line = lineno;
      fsm.states.push_back(words[0]);
    } else if (keyword == "trans") {
      auto words = split_list(rest);
      if (words.size() != 3) throw SpecSyntaxError(lineno, "expected trans <state> <event> <state>");
      if (!fsm.first_line) fsm.first_line = lineno;
      fsm.trans.push_back({lineno, words[0], words[1], words[2]});
    } else if (keyword == "label") {
      auto words = split_list(rest);
      if (words.size() != 2) throw SpecSyntaxError(lineno, "expected label <state> match|fail|unknown");
      auto tag = verdict_tag_from(words[1]);
      if (!tag || *tag == VerdictTag::ratio) throw SpecSyntaxError(lineno, "bad label '" + words[1] + "'");
      if (!fsm.labels.emplace(words[0], *tag).second)
        throw SpecSyntaxError(lineno, "state " + words[0] + " labelled twice");
      if (!fsm.first_line) fsm.first_line = lineno;
    } else {
      throw SpecSyntaxError(lineno, "unknown directive '" + std::string(keyword) + "'");
    }
  }

  if (!have_name) throw SpecSyntaxError(0, "missing property line");
  if (!have_kind) throw SpecSyntaxError(0, "missing monitor line");
  if (spec.events.empty()) throw SpecSyntaxError(0, "no events declared");
  if (!spec.pattern.empty() && spec.kind != MonitorKind::regex)
    throw SpecSyntaxError(0, "pattern given for a non-regex monitor");
  if (fsm.first_line && spec.kind != MonitorKind::fsm)
    throw SpecSyntaxError(fsm.first_line, "state/trans/label lines need monitor: fsm");
  if (success_event && spec.kind != MonitorKind::ratio)
    throw SpecSyntaxError(0, "success line needs monitor: ratio");

  std::vector<std::string> alphabet;
  for (const auto& e : spec.events) alphabet.push_back(e.name);

  switch (spec.kind) {
    case MonitorKind::fsm: spec.machine = build_fsm(fsm, spec); break;
    case MonitorKind::regex:
      if (spec.pattern.empty()) throw SpecSyntaxError(0, "regex monitor needs a pattern line");
      spec.machine = regex::compile_regex(spec.pattern, alphabet);
      break;
    case MonitorKind::balance: {
      auto need = [&](const char* name) {
        int id = spec.event_id(name);
        if (id < 0) throw SpecSyntaxError(0, std::string("balance monitor needs event ") + name);
        return id;
      };
      spec.balance = {need("begin"), need("end"), need("acquire"), need("release")};
      break;
    }
    case MonitorKind::ratio: {
      std::string name = success_event.value_or("success");
      spec.ratio.success = spec.event_id(name);
      if (spec.ratio.success < 0) throw SpecSyntaxError(0, "ratio monitor: success event '" + name + "' not declared");
      break;
    }
  }
  if (!have_report)
    spec.trigger_set = {spec.kind == MonitorKind::ratio ? VerdictTag::ratio : VerdictTag::fail};
  return spec;
}

}  // namespace pmon

namespace pmon {

std::string render_property_spec(const MonitorSpec& spec) {
  std::string out = "property " + spec.name + "\nparams:";
  for (std::size_t i = 0; i < spec.params.size(); ++i) out += (i ? ", " : " ") + spec.params[i];
  out += '\n';
  for (const auto& e : spec.events) {
    out += "event " + e.name + "(";
    for (std::size_t i = 0; i < e.params.size(); ++i) out += (i ? ", " : "") + e.params[i];
    out += ")\n";
  }
  out += "monitor: " + std::string(to_string(spec.kind)) + "\n";
  switch (spec.kind) {
    case MonitorKind::regex: out += "pattern: " + spec.pattern + "\n"; break;
    case MonitorKind::fsm: {
      const auto& m = spec.machine;
      for (std::size_t s = 0; s < m.state_count(); ++s) {
        out += "state " + m.state_names[s];
        if (static_cast<int>(s) == m.initial) out += " initial";
        out += "\nlabel " + m.state_names[s] + " " + std::string(to_string(m.label[s])) + "\n";
      }
      for (std::size_t s = 0; s < m.state_count(); ++s)
        for (std::size_t e = 0; e < spec.events.size(); ++e)
          out += "trans " + m.state_names[s] + " " + spec.events[e].name + " " +
                 m.state_names[static_cast<std::size_t>(m.next[s][e])] + "\n";
      break;
    }
    case MonitorKind::ratio: out += "success: " + spec.decl(spec.ratio.success).name + "\n"; break;
    case MonitorKind::balance: break;
  }
  out += "report:";
  bool first = true;
  for (auto tag : spec.trigger_set) {
    out += (first ? " " : ", ") + std::string(to_string(tag));
    first = false;
  }
  out += '\n';
  return out;
}

}  // namespace pmon
