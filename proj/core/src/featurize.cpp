#include "renn/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "renn/errors.hpp"

namespace renn {

PretrainedEmbeddings PretrainedEmbeddings::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embedding file: " + path);
  PretrainedEmbeddings out;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    if (first) {
      first = false;
      // optional "count dim" header: exactly two integer fields
      std::istringstream probe(line);
      long a, b;
      std::string rest;
      if (probe >> a >> b && !(probe >> rest) && a > 0 && b > 0) {
        out.dim = static_cast<std::size_t>(b);
        continue;
      }
    }
    std::string word;
    if (!(ss >> word)) continue;
    std::vector<double> vec;
    double v;
    while (ss >> v) {
      if (!std::isfinite(v)) {
        throw ParseError("embedding line " + std::to_string(line_no) +
                         ": non-finite value for token '" + word + "'");
      }
      vec.push_back(v);
    }
    if (vec.empty()) {
      throw ParseError("embedding line " + std::to_string(line_no) +
                       ": no values for token '" + word + "'");
    }
    if (out.dim == 0) out.dim = vec.size();
    if (vec.size() != out.dim) {
      throw ParseError("embedding line " + std::to_string(line_no) + ": got " +
                       std::to_string(vec.size()) + " values, expected " +
                       std::to_string(out.dim));
    }
    out.vectors.emplace(std::move(word), std::move(vec));
  }
  return out;
}

std::size_t input_column_dim(std::size_t word_dim, std::size_t dist_dim,
                             std::size_t label_dim, std::size_t relations) {
  return word_dim + 2 * dist_dim + 2 * label_dim + 1 + relations;
}

namespace {

constexpr double kInitRange = 0.25;

Tensor random_table(std::size_t rows, std::size_t cols, Rng& rng) {
  return Tensor::random_uniform({rows, cols}, -kInitRange, kInitRange, rng);
}

}  // namespace

EmbeddingTables::EmbeddingTables(ModelParameters& params,
                                 const std::string& prefix,
                                 const TableConfig& config,
                                 const std::vector<RelationMention>& corpus,
                                 const PretrainedEmbeddings* pretrained,
                                 Rng& rng)
    : cfg_(config) {
  if (cfg_.max_len == 0) {
    throw ConfigError("embedding tables need max_len > 0");
  }
  if (pretrained && cfg_.word_dim != pretrained->dim) {
    throw ConfigError("word_dim " + std::to_string(cfg_.word_dim) +
                      " does not match embedding file dim " +
                      std::to_string(pretrained->dim));
  }
  std::set<std::string> words, ents, chks, deps;
  for (const auto& m : corpus) {
    for (const auto& w : m.tokens) words.insert(w);
    for (const auto& e : m.entity_types) ents.insert(e);
    for (const auto& c : m.chunks) chks.insert(c);
    for (const auto& e : m.dep_edges) deps.insert(e.label);
  }
  word_list_.assign(words.begin(), words.end());
  entity_list_.assign(ents.begin(), ents.end());
  chunk_list_.assign(chks.begin(), chks.end());
  dep_list_.assign(deps.begin(), deps.end());
  build_index_maps();

  E_ = &params.add(prefix + ".E",
                   random_table(2 + word_list_.size(), cfg_.word_dim, rng));
  if (pretrained) {
    for (std::size_t i = 0; i < word_list_.size(); ++i) {
      auto it = pretrained->vectors.find(word_list_[i]);
      if (it == pretrained->vectors.end()) continue;  // shared UNK row
      for (std::size_t j = 0; j < cfg_.word_dim; ++j) {
        E_->value.at(2 + i, j) = it->second[j];
      }
    }
  }
  std::size_t dist_rows = 2 * cfg_.max_len - 1 + 1;  // deltas plus PAD
  D_ = &params.add(prefix + ".D", random_table(dist_rows, cfg_.dist_dim, rng));
  T_ = &params.add(prefix + ".T",
                   random_table(2 + entity_list_.size(), cfg_.label_dim, rng));
  Q_ = &params.add(prefix + ".Q",
                   random_table(2 + chunk_list_.size(), cfg_.label_dim, rng));
}

EmbeddingTables::EmbeddingTables(ModelParameters& params,
                                 const std::string& prefix,
                                 const TableConfig& config,
                                 std::vector<std::string> words,
                                 std::vector<std::string> entity_labels,
                                 std::vector<std::string> chunk_labels,
                                 std::vector<std::string> dep_labels)
    : cfg_(config),
      word_list_(std::move(words)),
      entity_list_(std::move(entity_labels)),
      chunk_list_(std::move(chunk_labels)),
      dep_list_(std::move(dep_labels)) {
  build_index_maps();
  E_ = &params.add(prefix + ".E",
                   Tensor::zeros({2 + word_list_.size(), cfg_.word_dim}));
  std::size_t dist_rows = 2 * cfg_.max_len - 1 + 1;
  D_ = &params.add(prefix + ".D",
                   Tensor::zeros({dist_rows, cfg_.dist_dim}));
  T_ = &params.add(prefix + ".T",
                   Tensor::zeros({2 + entity_list_.size(), cfg_.label_dim}));
  Q_ = &params.add(prefix + ".Q",
                   Tensor::zeros({2 + chunk_list_.size(), cfg_.label_dim}));
  frozen_ = true;
}

void EmbeddingTables::build_index_maps() {
  words_.clear();
  entities_.clear();
  chunks_.clear();
  dep_labels_.clear();
  for (std::size_t i = 0; i < word_list_.size(); ++i) {
    words_[word_list_[i]] = 2 + i;
  }
  for (std::size_t i = 0; i < entity_list_.size(); ++i) {
    entities_[entity_list_[i]] = 2 + i;
  }
  for (std::size_t i = 0; i < chunk_list_.size(); ++i) {
    chunks_[chunk_list_[i]] = 2 + i;
  }
  for (std::size_t i = 0; i < dep_list_.size(); ++i) {
    dep_labels_[dep_list_[i]] = i;
  }
  distance_row_map_.resize(2 * cfg_.max_len);
  for (std::size_t i = 0; i < distance_row_map_.size(); ++i) {
    distance_row_map_[i] = i;
  }
  distance_pad_slot_ = 2 * cfg_.max_len - 1;
}

std::size_t EmbeddingTables::column_dim() const {
  return input_column_dim(cfg_.word_dim, cfg_.dist_dim, cfg_.label_dim,
                          dep_list_.size());
}

std::size_t EmbeddingTables::word_row(const std::string& w) const {
  auto it = words_.find(w);
  return it == words_.end() ? kUnkRow : it->second;
}

std::size_t EmbeddingTables::entity_row(const std::string& label) const {
  auto it = entities_.find(label);
  return it == entities_.end() ? kUnkRow : it->second;
}

std::size_t EmbeddingTables::chunk_row(const std::string& label) const {
  auto it = chunks_.find(label);
  return it == chunks_.end() ? kUnkRow : it->second;
}

int EmbeddingTables::relation_bit(const std::string& label) const {
  auto it = dep_labels_.find(label);
  return it == dep_labels_.end() ? -1 : static_cast<int>(it->second);
}

std::size_t EmbeddingTables::distance_row(long delta) const {
  long n = static_cast<long>(cfg_.max_len);
  if (delta <= -n || delta >= n) {
    throw DimensionError("relative distance " + std::to_string(delta) +
                         " outside [-(n-1), n-1] for n=" + std::to_string(n));
  }
  return distance_row_map_[static_cast<std::size_t>(delta + n - 1)];
}

std::size_t EmbeddingTables::distance_pad_row() const {
  return distance_row_map_[distance_pad_slot_];
}

void EmbeddingTables::permute_distance_rows(
    const std::vector<std::size_t>& perm) {
  if (perm.size() != D_->value.rows()) {
    throw DimensionError("distance permutation size mismatch");
  }
  Tensor old = D_->value;
  std::size_t c = old.cols();
  for (std::size_t r = 0; r < perm.size(); ++r) {
    for (std::size_t j = 0; j < c; ++j) {
      D_->value.at(perm[r], j) = old.at(r, j);
    }
  }
  for (std::size_t& slot : distance_row_map_) slot = perm[slot];
}

std::size_t EmbeddingTables::grow_entity_label(const std::string& label,
                                               Rng& rng) {
  if (frozen_) throw ConfigError("entity table is frozen");
  auto it = entities_.find(label);
  if (it != entities_.end()) return it->second;
  entity_list_.push_back(label);
  std::size_t row = T_->value.rows();
  T_->value.append_rows(1);
  for (std::size_t j = 0; j < cfg_.label_dim; ++j) {
    T_->value.at(row, j) = rng.uniform(-kInitRange, kInitRange);
  }
  T_->sync_grad_shape();
  entities_[label] = row;
  return row;
}

std::size_t EmbeddingTables::grow_chunk_label(const std::string& label,
                                              Rng& rng) {
  if (frozen_) throw ConfigError("chunk table is frozen");
  auto it = chunks_.find(label);
  if (it != chunks_.end()) return it->second;
  chunk_list_.push_back(label);
  std::size_t row = Q_->value.rows();
  Q_->value.append_rows(1);
  for (std::size_t j = 0; j < cfg_.label_dim; ++j) {
    Q_->value.at(row, j) = rng.uniform(-kInitRange, kInitRange);
  }
  Q_->sync_grad_shape();
  chunks_[label] = row;
  return row;
}

namespace {

void append_row(Column& out, const Parameter& table, std::size_t row) {
  std::size_t c = table.value.cols();
  const double* src = table.value.data() + row * c;
  out.insert(out.end(), src, src + c);
}

InputMatrix featurize_impl(const RelationMention& mention,
                           const SentenceView& view,
                           const EmbeddingTables& tables, std::size_t n,
                           EmbeddingTables* growable, Rng* growth_rng) {
  if (view.length() > n) {
    throw DimensionError("mention " + mention.id + ": view length " +
                         std::to_string(view.length()) + " exceeds n=" +
                         std::to_string(n));
  }
  if (n > tables.max_len()) {
    throw DimensionError("n=" + std::to_string(n) +
                         " exceeds the distance table range (max_len=" +
                         std::to_string(tables.max_len()) + ")");
  }

  std::vector<std::size_t> path = dependency_path(mention);
  auto on_path = [&](std::size_t pos) {
    return std::binary_search(path.begin(), path.end(), pos);
  };

  std::size_t relations = tables.relation_count();
  // incident-relation bits per original token position
  std::vector<std::vector<double>> incident(mention.length(),
                                            std::vector<double>(relations, 0));
  for (const DepEdge& e : mention.dep_edges) {
    int bit = tables.relation_bit(e.label);
    if (bit < 0) continue;
    incident[e.gov][static_cast<std::size_t>(bit)] = 1.0;
    incident[e.dep][static_cast<std::size_t>(bit)] = 1.0;
  }

  InputMatrix out;
  out.length = n;
  out.real_length = view.length();
  out.head1 = view.view_head1;
  out.head2 = view.view_head2;
  out.dim = tables.column_dim();
  out.columns.reserve(n);
  out.sources.reserve(n);
  out.tails.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    ColumnSource src;
    Column tail;
    if (i < view.length()) {
      std::size_t orig = view.indices[i];
      src.word_row = tables.word_row(mention.tokens[orig]);
      src.dist1_row = tables.distance_row(static_cast<long>(i) -
                                          static_cast<long>(view.view_head1));
      src.dist2_row = tables.distance_row(static_cast<long>(i) -
                                          static_cast<long>(view.view_head2));
      const std::string& ent = mention.entity_types[orig];
      const std::string& chk = mention.chunks[orig];
      if (growable && !growable->frozen()) {
        src.entity_row = growable->grow_entity_label(ent, *growth_rng);
        src.chunk_row = growable->grow_chunk_label(chk, *growth_rng);
      } else {
        src.entity_row = tables.entity_row(ent);
        src.chunk_row = tables.chunk_row(chk);
      }
      tail.push_back(on_path(orig) ? 1.0 : 0.0);
      tail.insert(tail.end(), incident[orig].begin(), incident[orig].end());
    } else {
      src.pad = true;
      src.word_row = EmbeddingTables::kPadRow;
      src.dist1_row = tables.distance_pad_row();
      src.dist2_row = tables.distance_pad_row();
      src.entity_row = EmbeddingTables::kPadRow;
      src.chunk_row = EmbeddingTables::kPadRow;
      tail.assign(1 + relations, 0.0);
    }

    Column col;
    col.reserve(out.dim);
    append_row(col, tables.word_table(), src.word_row);
    append_row(col, tables.distance_table(), src.dist1_row);
    append_row(col, tables.distance_table(), src.dist2_row);
    append_row(col, tables.entity_table(), src.entity_row);
    append_row(col, tables.chunk_table(), src.chunk_row);
    col.insert(col.end(), tail.begin(), tail.end());

    out.sources.push_back(src);
    out.tails.push_back(std::move(tail));
    out.columns.push_back(std::move(col));
  }
  return out;
}

}  // namespace

InputMatrix featurize(const RelationMention& mention, const SentenceView& view,
                      const EmbeddingTables& tables, std::size_t n) {
  return featurize_impl(mention, view, tables, n, nullptr, nullptr);
}

InputMatrix featurize(const RelationMention& mention, const SentenceView& view,
                      EmbeddingTables& tables, std::size_t n,
                      Rng& growth_rng) {
  return featurize_impl(mention, view, tables, n, &tables, &growth_rng);
}

std::vector<Value> input_columns(Tape& tape, EmbeddingTables& tables,
                                 const InputMatrix& matrix) {
  std::vector<Value> out;
  out.reserve(matrix.length);
  for (std::size_t i = 0; i < matrix.length; ++i) {
    const ColumnSource& src = matrix.sources[i];
    std::vector<Value> pieces;
    pieces.reserve(6);
    pieces.push_back(tape.param_row(tables.word_table(), src.word_row));
    pieces.push_back(tape.param_row(tables.distance_table(), src.dist1_row));
    pieces.push_back(tape.param_row(tables.distance_table(), src.dist2_row));
    pieces.push_back(tape.param_row(tables.entity_table(), src.entity_row));
    pieces.push_back(tape.param_row(tables.chunk_table(), src.chunk_row));
    pieces.push_back(tape.constant_vector(matrix.tails[i]));
    out.push_back(tape.concat(pieces));
  }
  return out;
}

}  // namespace renn
