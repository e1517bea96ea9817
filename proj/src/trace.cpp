#include "pmon/trace.hpp"

#include <cctype>
#include <sstream>

#include "pmon/error.hpp"

namespace pmon {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

ParametricEvent parse_line(std::string_view line, std::size_t lineno) {
  auto tokens = split_ws(line);
  if (!is_identifier(tokens.front()))
    throw ParseError(lineno, "bad event name '" + std::string(tokens.front()) + "'");
  std::vector<ParamInstance::Binding> bindings;
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    auto tok = tokens[k];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(lineno, "expected param=value, got '" + std::string(tok) + "'");
    auto name = tok.substr(0, eq);
    auto value = tok.substr(eq + 1);
    if (!is_identifier(name)) throw ParseError(lineno, "bad parameter name '" + std::string(name) + "'");
    if (!is_param_value(value))
      throw ParseError(lineno, "bad value for parameter " + std::string(name));
    for (const auto& b : bindings)
      if (b.first == name)
        throw DuplicateParam(lineno, "parameter " + std::string(name) + " repeated");
    bindings.emplace_back(std::string(name), std::string(value));
  }
  return {std::string(tokens.front()), ParamInstance(std::move(bindings))};
}

}  // namespace

std::optional<ParametricEvent> TraceReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    if (split_ws(view).empty()) continue;
    return parse_line(view, line_);
  }
  return std::nullopt;
}

ParametricTrace parse_trace(std::istream& in) {
  ParametricTrace trace;
  TraceReader reader(in);
  while (auto e = reader.next()) trace.push_back(*std::move(e));
  return trace;
}

ParametricTrace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

std::string render_event(const ParametricEvent& e) {
  std::string out = e.base;
  for (const auto& [name, value] : e.instance.bindings()) {
    out += ' ';
    out += name;
    out += '=';
    out += value;
  }
  return out;
}

std::string render_trace(const ParametricTrace& trace) {
  std::string out;
  for (const auto& e : trace) {
    out += render_event(e);
    out += '\n';
  }
  return out;
}

std::string join_events(const BaseTrace& trace) {
  std::string out;
  for (const auto& e : trace) {
    if (!out.empty()) out += ' ';
    out += e;
  }
  return out;
}

BaseTrace slice_by_definition(const ParametricTrace& tau, const ParamInstance& theta) {
  BaseTrace out;
  for (const auto& e : tau)
    if (less_informative(e.instance, theta)) out.push_back(e.base);
  return out;
}

InstanceSet theta_of_trace(const ParametricTrace& tau) {
  InstanceSet seen;
  for (const auto& e : tau) seen.insert(e.instance);
  return lub_closure(seen);
}

}  // namespace pmon
