#include "renn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "renn/errors.hpp"

namespace renn {

namespace {

constexpr char kMagic[8] = {'R', 'E', 'N', 'N', 'C', 'K', 'P', 'T'};
constexpr int kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint blob writer assumes a little-endian host");

void write_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.write(buf, 8);
}

std::uint64_t read_u64(std::istream& in) {
  char buf[8];
  in.read(buf, 8);
  std::uint64_t v;
  std::memcpy(&v, buf, 8);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<const Parameter*>& params,
                     const std::string& meta_json) {
  nlohmann::json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["meta"] = meta_json.empty()
                         ? nlohmann::json::object()
                         : nlohmann::json::parse(meta_json);
  nlohmann::json entries = nlohmann::json::array();
  std::uint64_t offset = 0;
  for (const Parameter* p : params) {
    nlohmann::json e;
    e["name"] = p->name;
    e["shape"] = p->value.shape();
    e["offset"] = offset;
    offset += p->value.size() * sizeof(double);
    entries.push_back(std::move(e));
  }
  manifest["params"] = std::move(entries);
  std::string manifest_text = manifest.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint: " + path);
  out.write(kMagic, 8);
  write_u64(out, manifest_text.size());
  out.write(manifest_text.data(),
            static_cast<std::streamsize>(manifest_text.size()));
  for (const Parameter* p : params) {
    out.write(reinterpret_cast<const char*>(p->value.data()),
              static_cast<std::streamsize>(p->value.size() * sizeof(double)));
  }
  if (!out) throw IoError("short write on checkpoint: " + path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read checkpoint: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw ParseError("not a checkpoint file: " + path);
  }
  std::uint64_t manifest_len = read_u64(in);
  std::string manifest_text(manifest_len, '\0');
  in.read(manifest_text.data(), static_cast<std::streamsize>(manifest_len));
  if (!in) throw ParseError("truncated checkpoint manifest: " + path);

  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad checkpoint manifest: " + std::string(e.what()));
  }
  if (manifest.value("format_version", -1) != kFormatVersion) {
    throw ParseError("unsupported checkpoint format version in " + path);
  }

  LoadedCheckpoint ckpt;
  ckpt.meta_json = manifest["meta"].dump();
  for (const auto& e : manifest["params"]) {
    ckpt.names.push_back(e.at("name").get<std::string>());
    ckpt.shapes.push_back(e.at("shape").get<std::vector<std::size_t>>());
  }
  for (const auto& shape : ckpt.shapes) {
    Tensor t = Tensor::zeros(shape);
    in.read(reinterpret_cast<char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!in) throw ParseError("truncated checkpoint blob: " + path);
    ckpt.tensors.push_back(std::move(t));
  }
  return ckpt;
}

const Tensor& LoadedCheckpoint::tensor(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return tensors[i];
  }
  throw ParseError("checkpoint has no parameter named " + name);
}

bool LoadedCheckpoint::contains(const std::string& name) const {
  for (const auto& n : names) {
    if (n == name) return true;
  }
  return false;
}

void restore_parameters(const LoadedCheckpoint& ckpt,
                        const std::vector<Parameter*>& params) {
  for (Parameter* p : params) {
    const Tensor& t = ckpt.tensor(p->name);
    if (!t.same_shape(p->value)) {
      throw DimensionError("checkpoint shape mismatch for " + p->name +
                           ": " + t.shape_string() + " vs " +
                           p->value.shape_string());
    }
    p->value = t;
    p->sync_grad_shape();
    p->zero_grad();
  }
}

}  // namespace renn
