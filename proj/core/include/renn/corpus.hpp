#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace renn {

struct DepEdge {
  std::size_t gov = 0;
  std::size_t dep = 0;
  std::string label;

  bool operator==(const DepEdge&) const = default;
};

/// One labeled example: a sentence with two marked entity-mention heads,
/// per-token entity/chunk annotations, a dependency graph, and a gold
/// relation class. Immutable after construction by convention.
struct RelationMention {
  std::string id;
  std::vector<std::string> tokens;
  std::size_t head1 = 0;
  std::size_t head2 = 0;
  std::vector<std::string> entity_types;
  std::vector<std::string> chunks;
  std::vector<DepEdge> dep_edges;
  std::string gold_class;
  std::string domain;  // optional; groups partitioned evaluation

  std::size_t length() const { return tokens.size(); }

  /// Throws ValidationError naming this mention's id.
  void validate() const;

  bool operator==(const RelationMention&) const = default;
};

enum class ViewKind { kSeq, kDep };

std::string to_string(ViewKind kind);
ViewKind view_kind_from_string(const std::string& s);

/// An ordered selection of token positions from a mention: either the whole
/// sentence (SEQ) or the tokens on the dependency path between the two heads
/// (DEP). Indices are in original sentence order and contain both heads.
struct SentenceView {
  ViewKind kind = ViewKind::kSeq;
  std::vector<std::size_t> indices;
  std::size_t view_head1 = 0;  // position of head1 within indices
  std::size_t view_head2 = 0;  // position of head2 within indices

  std::size_t length() const { return indices.size(); }
};

/// Ordered relation classes plus the optional "no relation" class.
struct LabelSpace {
  std::vector<std::string> classes;
  std::optional<std::size_t> negative_class;

  /// Sorted distinct gold classes of the corpus; `negative_label` becomes
  /// the negative class when present (empty string disables).
  static LabelSpace from_corpus(const std::vector<RelationMention>& corpus,
                                const std::string& negative_label);

  std::size_t size() const { return classes.size(); }
  std::size_t index_of(const std::string& label) const;
  bool is_negative(std::size_t index) const {
    return negative_class && *negative_class == index;
  }
  bool operator==(const LabelSpace&) const = default;
};

/// Reads a UTF-8 JSON Lines corpus. Each line is an object with keys `id`,
/// `tokens`, `head1`, `head2`, `entity_types`, `chunks`, `dep_edges`
/// ([gov, dep, "label"] triples), `label`, and optionally `domain`. Unknown
/// keys are rejected. Malformed records raise ParseError naming the line;
/// out-of-range indices raise ValidationError naming the mention id.
std::vector<RelationMention> load_corpus(const std::string& path);

void save_corpus(const std::string& path,
                 const std::vector<RelationMention>& mentions);

/// Canonical single-line JSON for one mention (what save_corpus emits).
std::string corpus_line(const RelationMention& mention);

/// SEQ: all positions. DEP: exactly the positions on the shortest undirected
/// path between the heads (ties broken by the lexicographically smallest
/// index sequence), in original sentence order. DEP with disconnected heads
/// raises NoPathError.
SentenceView build_view(const RelationMention& mention, ViewKind kind);

/// Sorted token positions on the shortest undirected dependency path between
/// the heads; empty when the heads are disconnected.
std::vector<std::size_t> dependency_path(const RelationMention& mention);

/// The same path in walk order, from head1 to head2; empty when
/// disconnected.
std::vector<std::size_t> dependency_path_ordered(
    const RelationMention& mention);

/// Synthetic corpus recipe. Each positive mention carries a class-specific
/// trigger k-gram between its two heads, so the gold class is fully
/// determined by sentence content and a correct learner can approach perfect
/// F1. Negative mentions (label "NONE") carry no trigger.
struct SynthSpec {
  std::size_t classes = 4;          // positive classes R0..R{classes-1}
  std::size_t vocab = 120;
  std::size_t pattern_length = 3;   // trigger k-gram length
  std::size_t size = 1000;
  std::uint64_t seed = 1;
  double negative_fraction = 0.2;   // 0 disables negatives
  std::size_t affix_span = 3;       // prefix/suffix lengths in [0, affix_span)
  std::size_t filler_span = 4;      // between-head filler runs in [0, filler_span)
  std::vector<std::string> domains; // optional; cycled over mentions
};

/// Deterministic for a fixed spec (byte-identical corpora). Emits a random
/// dependency tree and cyclic entity/chunk annotations per mention.
std::vector<RelationMention> generate_synthetic(const SynthSpec& spec);

inline const char* kNegativeLabel = "NONE";

}  // namespace renn
