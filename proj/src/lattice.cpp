#include "pmon/lattice.hpp"

#include <algorithm>
#include <cctype>

#include "pmon/error.hpp"

namespace pmon {

namespace {

std::string encode(const std::vector<ParamInstance::Binding>& sorted) {
  std::string out;
  for (const auto& [name, value] : sorted) {
    if (!out.empty()) out += ',';
    out += name;
    out += '=';
    out += value;
  }
  return out;
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

bool is_param_value(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == '=' || std::isspace(static_cast<unsigned char>(c));
  });
}

ParamInstance::ParamInstance(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
  std::sort(bindings_.begin(), bindings_.end(),
            [](const Binding& a, const Binding& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    const auto& [name, value] = bindings_[i];
    if (!is_identifier(name)) throw PreconditionError("bad parameter name '" + name + "'");
    if (!is_param_value(value))
      throw PreconditionError("bad value '" + value + "' for parameter " + name);
    if (i > 0 && bindings_[i - 1].first == name)
      throw PreconditionError("parameter " + name + " bound twice");
  }
  key_ = encode(bindings_);
}

ParamInstance::ParamInstance(Trusted, std::vector<Binding> sorted)
    : bindings_(std::move(sorted)), key_(encode(bindings_)) {}

ParamInstance ParamInstance::parse(std::string_view text) {
  std::vector<Binding> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    // A value may contain ','; split a token only where a new `name=` begins.
    while (!tok.empty()) {
      auto eq = tok.find('=');
      if (eq == std::string_view::npos) throw PreconditionError("expected name=value, got '" + std::string(tok) + "'");
      auto next_eq = tok.find('=', eq + 1);
      std::size_t end = tok.size();
      if (next_eq != std::string_view::npos) {
        end = tok.rfind(',', next_eq);
        if (end == std::string_view::npos || end < eq)
          throw PreconditionError("expected name=value, got '" + std::string(tok) + "'");
      }
      std::string_view value = tok.substr(eq + 1, end - eq - 1);
      if (end == tok.size() && !value.empty() && value.back() == ',') value.remove_suffix(1);
      out.emplace_back(std::string(tok.substr(0, eq)), std::string(value));
      tok = end < tok.size() ? tok.substr(end + 1) : std::string_view{};
    }
    i = j;
  }
  return ParamInstance(std::move(out));
}

const std::string* ParamInstance::find(std::string_view name) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), name,
                             [](const Binding& b, std::string_view n) { return b.first < n; });
  if (it == bindings_.end() || it->first != name) return nullptr;
  return &it->second;
}

ParamInstance ParamInstance::restrict_to(std::uint64_t mask) const {
  std::vector<Binding> kept;
  for (std::size_t i = 0; i < bindings_.size(); ++i)
    if (mask & (std::uint64_t{1} << i)) kept.push_back(bindings_[i]);
  return ParamInstance(Trusted{}, std::move(kept));
}

bool less_informative(const ParamInstance& a, const ParamInstance& b) {
  if (a.size() > b.size()) return false;
  const auto& x = a.bindings();
  const auto& y = b.bindings();
  std::size_t j = 0;
  for (const auto& [name, value] : x) {
    while (j < y.size() && y[j].first < name) ++j;
    if (j == y.size() || y[j].first != name || y[j].second != value) return false;
    ++j;
  }
  return true;
}

bool compatible(const ParamInstance& a, const ParamInstance& b) {
  const auto& x = a.bindings();
  const auto& y = b.bindings();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    int c = x[i].first.compare(y[j].first);
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      if (x[i].second != y[j].second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

std::optional<ParamInstance> lub(const ParamInstance& a, const ParamInstance& b) {
  const auto& x = a.bindings();
  const auto& y = b.bindings();
  std::vector<ParamInstance::Binding> merged;
  merged.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      merged.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      merged.push_back(y[j++]);
    } else {
      if (x[i].second != y[j].second) return std::nullopt;
      merged.push_back(x[i++]);
      ++j;
    }
  }
  return ParamInstance(ParamInstance::Trusted{}, std::move(merged));
}

InstanceSet lub_set(const ParamInstance& singleton, const InstanceSet& theta_set) {
  InstanceSet out;
  for (const auto& t : theta_set)
    if (auto joined = lub(singleton, t)) out.insert(std::move(*joined));
  return out;
}

bool is_lub_closed(const InstanceSet& theta_set) {
  if (!theta_set.contains(ParamInstance{})) return false;
  for (auto i = theta_set.begin(); i != theta_set.end(); ++i)
    for (auto j = std::next(i); j != theta_set.end(); ++j)
      if (auto joined = lub(*i, *j); joined && !theta_set.contains(*joined)) return false;
  return true;
}

InstanceSet lub_closure(const InstanceSet& theta_set) {
  InstanceSet closed{ParamInstance{}};
  // Adding one element at a time: closure(S ∪ {t}) = S ∪ ({t} ⊔ S) for closed S.
  for (const auto& t : theta_set) {
    if (closed.contains(t)) continue;
    InstanceSet joined = lub_set(t, closed);
    closed.merge(joined);
  }
  return closed;
}

std::vector<ParamInstance> strict_subinstances_desc(const ParamInstance& theta, std::size_t cap) {
  const std::size_t n = theta.size();
  if (n > cap || n >= 63)
    throw CapExceeded("instance <" + theta.key() + "> has " + std::to_string(n) +
                      " parameters, enumeration cap is " + std::to_string(cap));
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<ParamInstance> out;
  out.reserve(full);
  for (std::uint64_t mask = 0; mask < full; ++mask) out.push_back(theta.restrict_to(mask));
  std::sort(out.begin(), out.end(), [](const ParamInstance& a, const ParamInstance& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.key() < b.key();
  });
  return out;
}

ParamInstance max_below_if(const ParamInstance& theta,
                           const std::function<bool(const ParamInstance&)>& contains,
                           std::size_t cap) {
  if (contains(theta)) return theta;
  std::optional<ParamInstance> best;
  for (auto& candidate : strict_subinstances_desc(theta, cap)) {
    if (!contains(candidate)) continue;
    if (!best) {
      best = std::move(candidate);
    } else if (!less_informative(candidate, *best)) {
      throw PreconditionError("no unique maximum below <" + theta.key() +
                              ">: set is not lub closed");
    }
  }
  if (!best) throw PreconditionError("no member below <" + theta.key() + ">: set lacks bottom");
  return *std::move(best);
}

ParamInstance max_below(const ParamInstance& theta, const InstanceSet& theta_set,
                        std::size_t cap) {
  return max_below_if(
      theta, [&](const ParamInstance& p) { return theta_set.contains(p); }, cap);
}

}  // namespace pmon
