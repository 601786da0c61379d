#pragma once

#include <string>
#include <vector>

#include "renn/parameters.hpp"

namespace renn {

/// Checkpoint container: an 8-byte magic, a length-prefixed JSON manifest
/// (format version, model metadata, parameter names/shapes/byte offsets),
/// then a blob of little-endian IEEE-754 doubles in manifest order.
///
/// `meta_json` is an arbitrary JSON object string describing how to rebuild
/// the owning model (kind, config, vocabularies, label space).
void save_checkpoint(const std::string& path,
                     const std::vector<const Parameter*>& params,
                     const std::string& meta_json);

struct LoadedCheckpoint {
  std::string meta_json;
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> shapes;
  std::vector<Tensor> tensors;

  const Tensor& tensor(const std::string& name) const;
  bool contains(const std::string& name) const;
};

LoadedCheckpoint load_checkpoint(const std::string& path);

/// Copies tensors into matching parameters by name; every parameter must be
/// present with an identical shape.
void restore_parameters(const LoadedCheckpoint& ckpt,
                        const std::vector<Parameter*>& params);

}  // namespace renn
