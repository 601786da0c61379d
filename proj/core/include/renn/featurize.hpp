#pragma once

#include <map>
#include <string>
#include <vector>

#include "renn/autodiff.hpp"
#include "renn/corpus.hpp"
#include "renn/parameters.hpp"
#include "renn/rng.hpp"

namespace renn {

using Column = std::vector<double>;

/// Plain-text word2vec embeddings: optional "count dim" header line, then one
/// line per word: token followed by whitespace-separated decimal floats.
struct PretrainedEmbeddings {
  std::size_t dim = 0;
  std::map<std::string, std::vector<double>> vectors;

  static PretrainedEmbeddings load(const std::string& path);
};

/// Column dimensionality: word + two distances + entity type + chunk +
/// on-path bit + one bit per dependency relation label.
std::size_t input_column_dim(std::size_t word_dim, std::size_t dist_dim,
                             std::size_t label_dim, std::size_t relations);

struct TableConfig {
  std::size_t word_dim = 300;
  std::size_t dist_dim = 50;
  std::size_t label_dim = 50;  // entity-type and chunk tables
  std::size_t max_len = 0;     // padded sentence length n
};

/// Trainable lookup tables for words, relative distances, entity types and
/// chunks, plus the dependency relation label index used by the binary
/// incident-edge features. Rows 0/1 of the word/entity/chunk tables are
/// reserved for PAD/UNK; the distance table keeps one dedicated PAD row
/// behind the delta range.
///
/// Tables are mutated only by the trainer; featurization reads them and may
/// run concurrently across mentions as long as no training step runs.
class EmbeddingTables {
 public:
  static constexpr std::size_t kPadRow = 0;
  static constexpr std::size_t kUnkRow = 1;

  /// Builds vocabularies from the corpus (sorted for stability), initializes
  /// D/T/Q uniformly in [-0.25, 0.25], and copies pretrained vectors into
  /// word rows when available (unknown and reserved rows are random).
  /// Registers parameters <prefix>.E/.D/.T/.Q in `params`.
  EmbeddingTables(ModelParameters& params, const std::string& prefix,
                  const TableConfig& config,
                  const std::vector<RelationMention>& corpus,
                  const PretrainedEmbeddings* pretrained, Rng& rng);

  /// Reconstruction from checkpoint metadata: vocabularies are given,
  /// parameter values are restored later.
  EmbeddingTables(ModelParameters& params, const std::string& prefix,
                  const TableConfig& config,
                  std::vector<std::string> words,
                  std::vector<std::string> entity_labels,
                  std::vector<std::string> chunk_labels,
                  std::vector<std::string> dep_labels);

  const TableConfig& config() const { return cfg_; }
  std::size_t column_dim() const;
  std::size_t relation_count() const { return dep_labels_.size(); }
  std::size_t max_len() const { return cfg_.max_len; }

  std::size_t word_row(const std::string& w) const;
  std::size_t entity_row(const std::string& label) const;
  std::size_t chunk_row(const std::string& label) const;
  /// -1 when the label was not seen at construction.
  int relation_bit(const std::string& label) const;

  /// Row for relative distance delta in [-(n-1), n-1]; the padding row for
  /// pad columns. Lookups go through a row map so rows can be permuted
  /// without changing featurization.
  std::size_t distance_row(long delta) const;
  std::size_t distance_pad_row() const;

  Parameter& word_table() { return *E_; }
  Parameter& distance_table() { return *D_; }
  Parameter& entity_table() { return *T_; }
  Parameter& chunk_table() { return *Q_; }
  const Parameter& word_table() const { return *E_; }
  const Parameter& distance_table() const { return *D_; }
  const Parameter& entity_table() const { return *T_; }
  const Parameter& chunk_table() const { return *Q_; }

  /// Applies a permutation to the distance-table rows and the row map
  /// together (lookup results are unchanged).
  void permute_distance_rows(const std::vector<std::size_t>& perm);

  bool frozen() const { return frozen_; }
  void freeze() { frozen_ = true; }
  /// Appends a table row for an unseen entity/chunk label. Only legal before
  /// freeze(); featurization maps unseen labels to UNK once frozen.
  std::size_t grow_entity_label(const std::string& label, Rng& rng);
  std::size_t grow_chunk_label(const std::string& label, Rng& rng);

  const std::vector<std::string>& words() const { return word_list_; }
  const std::vector<std::string>& entity_labels() const { return entity_list_; }
  const std::vector<std::string>& chunk_labels() const { return chunk_list_; }
  const std::vector<std::string>& dep_labels() const { return dep_list_; }

 private:
  void build_index_maps();

  TableConfig cfg_;
  Parameter* E_ = nullptr;
  Parameter* D_ = nullptr;
  Parameter* T_ = nullptr;
  Parameter* Q_ = nullptr;
  std::vector<std::string> word_list_, entity_list_, chunk_list_, dep_list_;
  std::map<std::string, std::size_t> words_, entities_, chunks_;
  std::map<std::string, std::size_t> dep_labels_;
  std::vector<std::size_t> distance_row_map_;  // delta+(n-1) -> table row
  std::size_t distance_pad_slot_ = 0;
  bool frozen_ = false;
};

/// Where each column's pieces come from; what a training graph needs to make
/// gradients reach the right table rows.
struct ColumnSource {
  std::size_t word_row = 0;
  std::size_t dist1_row = 0;
  std::size_t dist2_row = 0;
  std::size_t entity_row = 0;
  std::size_t chunk_row = 0;
  bool pad = false;
};

/// The n-column input matrix X: per-token concatenations
/// [word, dist-to-head1, dist-to-head2, entity, chunk, on-path bit,
/// incident-relation bits], padded on the right to length n.
struct InputMatrix {
  std::size_t length = 0;       // n, after padding
  std::size_t real_length = 0;  // view length
  std::size_t head1 = 0;
  std::size_t head2 = 0;
  std::size_t dim = 0;
  std::vector<Column> columns;        // realized numbers, size length
  std::vector<ColumnSource> sources;  // size length
  std::vector<Column> tails;          // [p, g...] per column, size length
};

/// Distances count positions within the view. PAD columns use the PAD rows,
/// a zero on-path bit and zero relation bits. Views longer than n raise
/// DimensionError.
InputMatrix featurize(const RelationMention& mention, const SentenceView& view,
                      const EmbeddingTables& tables, std::size_t n);

/// As above, but unseen entity/chunk labels grow the tables while they are
/// unfrozen (training-time vocabulary growth).
InputMatrix featurize(const RelationMention& mention, const SentenceView& view,
                      EmbeddingTables& tables, std::size_t n, Rng& growth_rng);

/// Tape columns for the same matrix, with gradients flowing into the tables.
std::vector<Value> input_columns(Tape& tape, EmbeddingTables& tables,
                                 const InputMatrix& matrix);

}  // namespace renn
