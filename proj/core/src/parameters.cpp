#include "renn/parameters.hpp"

#include "renn/errors.hpp"

namespace renn {

Parameter& ModelParameters::add(std::string name, Tensor value,
                                bool max_norm_target) {
  if (index_.count(name)) {
    throw ConfigError("duplicate parameter name: " + name);
  }
  index_.emplace(name, owned_.size());
  owned_.push_back(
      std::make_unique<Parameter>(std::move(name), std::move(value),
                                  max_norm_target));
  return *owned_.back();
}

Parameter& ModelParameters::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw ConfigError("unknown parameter: " + name);
  return *owned_[it->second];
}

const Parameter& ModelParameters::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ConfigError("unknown parameter: " + name);
  return *owned_[it->second];
}

bool ModelParameters::contains(const std::string& name) const {
  return index_.count(name) > 0;
}

std::vector<Parameter*> ModelParameters::pointers() {
  std::vector<Parameter*> out;
  out.reserve(owned_.size());
  for (auto& p : owned_) out.push_back(p.get());
  return out;
}

std::vector<const Parameter*> ModelParameters::pointers() const {
  std::vector<const Parameter*> out;
  out.reserve(owned_.size());
  for (auto& p : owned_) out.push_back(p.get());
  return out;
}

void ModelParameters::zero_grads() {
  for (auto& p : owned_) p->zero_grad();
}

std::size_t ModelParameters::total_entries() const {
  std::size_t n = 0;
  for (auto& p : owned_) n += p->value.size();
  return n;
}

}  // namespace renn
