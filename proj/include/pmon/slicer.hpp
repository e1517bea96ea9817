#pragma once

// Online parametric trace slicing: the table (T, Θ) maintained event by event.

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmon/lattice.hpp"
#include "pmon/trace.hpp"

namespace pmon {

struct SlicerOptions {
  std::size_t cap = kDefaultEnumerationCap;
  // Testing hook: when false, each update reads the live table instead of the
  // pre-step snapshot, which lets an event be appended more than once.
  bool snapshot = true;
};

/// Slice lookup table. Dom(T) = Θ after every step, Θ is lub closed, and
/// T(θ) = τ↾θ for every θ ∈ Θ.
class SliceTable {
 public:
  explicit SliceTable(SlicerOptions options = {});

  /// Processes e⟨θ⟩: every θ' ∈ {θ} ⊔ Θ gets T(max(θ']_Θ) e, then Θ grows.
  void step(const ParametricEvent& event);

  /// τ↾theta for the processed prefix τ, i.e. T(max(theta]_Θ).
  BaseTrace lookup(const ParamInstance& theta) const;

  /// T(theta) for theta ∈ Θ; PreconditionError otherwise.
  BaseTrace slice_at(const ParamInstance& theta) const;

  const InstanceSet& theta() const { return theta_; }
  std::size_t events_processed() const { return processed_; }

  /// Instances updated by the most recent step, in Θ order.
  const std::vector<ParamInstance>& last_updated() const { return last_updated_; }

 private:
  using Slice = std::vector<std::uint32_t>;

  std::uint32_t intern(const std::string& name);
  BaseTrace materialize(const Slice& slice) const;

  SlicerOptions options_;
  std::map<ParamInstance, Slice, InstanceOrder> table_;
  InstanceSet theta_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> name_ids_;
  std::vector<ParamInstance> last_updated_;
  std::size_t processed_ = 0;
};

}  // namespace pmon
