#include "renn/loglinear.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "renn/errors.hpp"

namespace renn {

std::uint32_t FeatureDict::intern(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  if (frozen_) {
    throw ConfigError("feature dictionary is frozen; cannot intern " + name);
  }
  std::uint32_t id = static_cast<std::uint32_t>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<std::uint32_t> FeatureDict::lookup(
    const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureDict FeatureDict::from_names(std::vector<std::string> names) {
  FeatureDict d;
  for (auto& n : names) d.intern(n);
  d.freeze();
  return d;
}

namespace {

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string distance_bucket(std::size_t between) {
  if (between <= 2) return std::to_string(between);
  if (between <= 5) return "3-5";
  return "6+";
}

}  // namespace

std::vector<std::string> feature_names(const RelationMention& mention,
                                       const SentenceView& view) {
  std::vector<std::string> out;
  auto word = [&](std::size_t view_pos) {
    return lowercase(mention.tokens[view.indices[view_pos]]);
  };

  std::string hm1 = word(view.view_head1);
  std::string hm2 = word(view.view_head2);
  out.push_back("HM1=" + hm1);
  out.push_back("HM2=" + hm2);
  out.push_back("HM12=" + hm1 + "_" + hm2);

  const std::string& et1 = mention.entity_types[mention.head1];
  const std::string& et2 = mention.entity_types[mention.head2];
  out.push_back("ET1=" + et1);
  out.push_back("ET2=" + et2);
  out.push_back("ET12=" + et1 + "-" + et2);

  std::size_t lo = std::min(view.view_head1, view.view_head2);
  std::size_t hi = std::max(view.view_head1, view.view_head2);
  if (hi - lo <= 1) {
    out.push_back("WB_EMPTY");
  } else {
    std::set<std::string> bag;
    for (std::size_t i = lo + 1; i < hi; ++i) bag.insert(word(i));
    for (const auto& w : bag) out.push_back("WB_" + w);
    out.push_back("WBF=" + word(lo + 1));
    out.push_back("WBL=" + word(hi - 1));
  }
  out.push_back("DIST=" + distance_bucket(hi - lo - 1));

  std::string cpath;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const std::string& chunk = mention.chunks[view.indices[i]];
    if (chunk.rfind("B-", 0) == 0) {
      if (!cpath.empty()) cpath += "_";
      cpath += chunk.substr(2);
    }
  }
  out.push_back("CPATH=" + (cpath.empty() ? "EMPTY" : cpath));

  std::vector<std::size_t> path = dependency_path_ordered(mention);
  if (path.empty()) {
    out.push_back("DPATH=NONE");
    out.push_back("DPLEN=0");
  } else {
    // parallel edges may carry different labels; take the smallest
    std::map<std::pair<std::size_t, std::size_t>, std::string> edge_label;
    for (const DepEdge& e : mention.dep_edges) {
      auto key = std::minmax(e.gov, e.dep);
      auto it = edge_label.find(key);
      if (it == edge_label.end() || e.label < it->second) {
        edge_label[key] = e.label;
      }
    }
    std::string dpath;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!dpath.empty()) dpath += "_";
      dpath += edge_label[std::minmax(path[i], path[i + 1])];
    }
    out.push_back("DPATH=" + (dpath.empty() ? "NONE" : dpath));
    out.push_back("DPLEN=" + std::to_string(path.size()));
  }
  return out;
}

SparseFeatureVector extract_features(const RelationMention& mention,
                                     const SentenceView& view,
                                     FeatureDict& dict) {
  SparseFeatureVector out;
  for (const std::string& name : feature_names(mention, view)) {
    if (dict.frozen()) {
      auto id = dict.lookup(name);
      if (!id) continue;  // unseen at training time
      out.entries.emplace_back(*id, 1.0);
    } else {
      out.entries.emplace_back(dict.intern(name), 1.0);
    }
  }
  std::sort(out.entries.begin(), out.entries.end());
  out.entries.erase(std::unique(out.entries.begin(), out.entries.end()),
                    out.entries.end());
  return out;
}

LogLinearModel::LogLinearModel(ModelParameters& params,
                               const std::string& prefix, std::size_t classes,
                               std::size_t feature_count, double l2)
    : classes_(classes), l2_(l2) {
  if (classes < 1) throw ConfigError("loglinear: class count unset");
  if (l2 < 0) throw ConfigError("loglinear: negative l2 coefficient");
  weights_ =
      &params.add(prefix + ".W", Tensor::zeros({classes, feature_count}));
  bias_ = &params.add(prefix + ".b", Tensor::zeros({classes}));
}

ClassDistribution LogLinearModel::forward(
    const SparseFeatureVector& features) const {
  std::vector<double> logits(classes_);
  for (std::size_t c = 0; c < classes_; ++c) logits[c] = bias_->value[c];
  std::size_t width = weights_->value.cols();
  for (const auto& [id, val] : features.entries) {
    if (id >= width) continue;
    for (std::size_t c = 0; c < classes_; ++c) {
      logits[c] += weights_->value.at(c, id) * val;
    }
  }
  return softmax(logits);
}

Value LogLinearModel::build_distribution(
    Tape& tape, const SparseFeatureVector& features) const {
  return tape.softmax(tape.sparse_affine(*weights_, *bias_, features));
}

std::optional<Value> LogLinearModel::build_penalty(Tape& tape) const {
  if (l2_ <= 0.0) return std::nullopt;
  return tape.scale(tape.sum_squares(*weights_), l2_);
}

}  // namespace renn
