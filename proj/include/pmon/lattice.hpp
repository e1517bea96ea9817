#pragma once

// The lattice of partial parameter bindings: instances, their ordering,
// least upper bounds, lub closures and the max-below lookup.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmon {

inline constexpr std::size_t kDefaultEnumerationCap = 10;

/// True if `s` matches `[A-Za-z_][A-Za-z0-9_]*`.
bool is_identifier(std::string_view s);

/// True if `s` is a legal parameter value: nonempty, no whitespace, no '='.
bool is_param_value(std::string_view s);

/// A finite partial map from parameter names to opaque values.
///
/// Bindings are kept sorted by name (bytewise), and the canonical encoding
/// `name=value,...` is cached; it is the identity used for ordering and hashing.
/// The default-constructed instance is bottom, the map undefined everywhere.
class ParamInstance {
 public:
  using Binding = std::pair<std::string, std::string>;

  ParamInstance() = default;

  /// Throws PreconditionError on a repeated or malformed name, or a malformed value.
  explicit ParamInstance(std::vector<Binding> bindings);
  ParamInstance(std::initializer_list<Binding> bindings)
      : ParamInstance(std::vector<Binding>(bindings)) {}

  /// Parses `a=a1,b=b1` (commas or spaces as separators). Empty text is bottom.
  static ParamInstance parse(std::string_view text);

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool is_bottom() const { return bindings_.empty(); }
  const std::string& key() const { return key_; }

  /// Value bound to `name`, if any.
  const std::string* find(std::string_view name) const;

  /// Restriction to the bindings selected by `mask` (bit i keeps binding i).
  ParamInstance restrict_to(std::uint64_t mask) const;

  friend bool operator==(const ParamInstance& a, const ParamInstance& b) {
    return a.key_ == b.key_;
  }

 private:
  struct Trusted {};
  ParamInstance(Trusted, std::vector<Binding> sorted);
  friend std::optional<ParamInstance> lub(const ParamInstance&, const ParamInstance&);

  std::vector<Binding> bindings_;
  std::string key_;
};

/// Deterministic order: domain cardinality ascending, then canonical encoding.
struct InstanceOrder {
  bool operator()(const ParamInstance& a, const ParamInstance& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.key() < b.key();
  }
};

struct InstanceHash {
  std::size_t operator()(const ParamInstance& p) const {
    return std::hash<std::string>{}(p.key());
  }
};

using InstanceSet = std::set<ParamInstance, InstanceOrder>;

/// a ⊑ b: Dom(a) ⊆ Dom(b) and both agree on Dom(a).
bool less_informative(const ParamInstance& a, const ParamInstance& b);

/// a ⊏ b.
inline bool strictly_less_informative(const ParamInstance& a, const ParamInstance& b) {
  return a.size() < b.size() && less_informative(a, b);
}

/// Agreement on the shared domain.
bool compatible(const ParamInstance& a, const ParamInstance& b);

/// a ⊔ b, or nullopt when the two are incompatible.
std::optional<ParamInstance> lub(const ParamInstance& a, const ParamInstance& b);

/// {singleton} ⊔ theta_set: every defined pairwise lub.
InstanceSet lub_set(const ParamInstance& singleton, const InstanceSet& theta_set);

/// ⊥ present and closed under binary lubs of compatible members.
bool is_lub_closed(const InstanceSet& theta_set);

/// Smallest lub-closed superset.
InstanceSet lub_closure(const InstanceSet& theta_set);

/// Every strict restriction of `theta`, by decreasing cardinality, ties by key.
/// Throws CapExceeded when |Dom(theta)| > cap.
std::vector<ParamInstance> strict_subinstances_desc(const ParamInstance& theta,
                                                    std::size_t cap = kDefaultEnumerationCap);

/// The unique maximum of {t ∈ theta_set : t ⊑ theta}. Scans restrictions of
/// `theta` by decreasing cardinality. Throws PreconditionError if the set has
/// no unique maximum below `theta` (only possible when it is not lub closed).
ParamInstance max_below(const ParamInstance& theta, const InstanceSet& theta_set,
                        std::size_t cap = kDefaultEnumerationCap);

/// Same lookup against any membership predicate.
ParamInstance max_below_if(const ParamInstance& theta,
                           const std::function<bool(const ParamInstance&)>& contains,
                           std::size_t cap = kDefaultEnumerationCap);

}  // namespace pmon
