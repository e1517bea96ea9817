#include "pmon/slicer.hpp"

#include <utility>

#include "pmon/error.hpp"

namespace pmon {

SliceTable::SliceTable(SlicerOptions options) : options_(options) {
  table_.emplace(ParamInstance{}, Slice{});
  theta_.insert(ParamInstance{});
}

std::uint32_t SliceTable::intern(const std::string& name) {
  auto [it, inserted] = name_ids_.try_emplace(name, static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

void SliceTable::step(const ParametricEvent& event) {
  const std::uint32_t id = intern(event.base);
  InstanceSet targets = lub_set(event.instance, theta_);
  last_updated_.assign(targets.begin(), targets.end());

  if (options_.snapshot) {
    // Read every source from the pre-step table before writing anything.
    std::vector<std::pair<ParamInstance, Slice>> updates;
    updates.reserve(targets.size());
    for (const auto& target : targets) {
      Slice s = table_.at(max_below(target, theta_, options_.cap));
      s.push_back(id);
      updates.emplace_back(target, std::move(s));
    }
    for (auto& [target, s] : updates) table_.insert_or_assign(target, std::move(s));
    theta_.insert(targets.begin(), targets.end());
  } else {
    // Live lookup: sources may already carry this event, and a source
    // written earlier in the step wins over an older one.
    InstanceSet written;
    for (const auto& target : targets) {
      const ParamInstance* source = nullptr;
      if (table_.contains(target)) {
        source = &target;
      } else {
        for (const auto& sub : strict_subinstances_desc(target, options_.cap)) {
          auto it = table_.find(sub);
          if (it == table_.end()) continue;
          if (!source || written.contains(sub)) source = &it->first;
          if (written.contains(sub)) break;
        }
      }
      Slice s = table_.at(*source);
      s.push_back(id);
      table_.insert_or_assign(target, std::move(s));
      theta_.insert(target);
      written.insert(target);
    }
  }
  ++processed_;
}

BaseTrace SliceTable::materialize(const Slice& slice) const {
  BaseTrace out;
  out.reserve(slice.size());
  for (auto id : slice) out.push_back(names_[id]);
  return out;
}

BaseTrace SliceTable::lookup(const ParamInstance& theta) const {
  return materialize(table_.at(max_below(theta, theta_, options_.cap)));
}

BaseTrace SliceTable::slice_at(const ParamInstance& theta) const {
  auto it = table_.find(theta);
  if (it == table_.end()) throw PreconditionError("<" + theta.key() + "> is not in the slice table");
  return materialize(it->second);
}

}  // namespace pmon
