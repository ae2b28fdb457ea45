#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "pncf/training.hpp"

namespace pncf {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

constexpr char kMagic[4] = {'P', 'N', 'C', 'F'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(std::vector<char>& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out_.insert(out_.end(), buf, buf + sizeof(T));
  }

  void put_f32_tensor(const std::vector<double>& values) {
    for (double v : values) put(static_cast<float>(v));
  }

 private:
  std::vector<char>& out_;
};

class Reader {
 public:
  Reader(const char* data, std::size_t size) : data_(data), size_(size) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > size_) {
      throw FormatError("checkpoint truncated at byte " + std::to_string(pos_));
    }
    T value;
    std::memcpy(&value, data_ + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  void get_f32_tensor(std::vector<double>& values) {
    for (double& v : values) v = static_cast<double>(get<float>());
  }

  std::size_t remaining() const { return size_ - pos_; }

 private:
  const char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_checkpoint(const NcfParams& params, const std::string& path,
                     std::uint64_t train_seed, std::uint32_t epoch) {
  params.validate();
  std::vector<char> bytes;
  Writer w(bytes);
  bytes.insert(bytes.end(), kMagic, kMagic + 4);
  w.put(kVersion);
  w.put(static_cast<std::uint8_t>(params.mode.kind));
  w.put(static_cast<std::uint8_t>(params.mode.same_trait));
  w.put(static_cast<std::uint8_t>(params.mode.hard_policy));
  w.put(static_cast<std::uint8_t>(0));  // reserved
  w.put(params.mode.label_seed);
  w.put(params.mode.temperature);

  w.put(static_cast<std::uint32_t>(params.users()));
  w.put(static_cast<std::uint32_t>(params.items()));
  w.put(static_cast<std::uint32_t>(kEmbeddingDim));
  w.put(static_cast<std::uint32_t>(params.trait_emb.rows));
  w.put(static_cast<std::uint32_t>(params.trait_emb.cols));
  w.put(static_cast<std::uint32_t>(params.mlp.layers.size()));
  for (const MlpLayer& layer : params.mlp.layers) {
    w.put(static_cast<std::uint32_t>(layer.weight.rows));
    w.put(static_cast<std::uint32_t>(layer.weight.cols));
  }
  w.put(train_seed);
  w.put(epoch);

  w.put_f32_tensor(params.user_emb.values);
  w.put_f32_tensor(params.item_emb.values);
  if (!params.trait_emb.empty()) w.put_f32_tensor(params.trait_emb.values);
  for (const MlpLayer& layer : params.mlp.layers) {
    w.put_f32_tensor(layer.weight.values);
    w.put_f32_tensor(layer.bias);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to checkpoint: " + path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  Reader r(bytes.data(), bytes.size());

  char magic[4];
  for (char& c : magic) c = r.get<char>();
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("not a checkpoint: bad magic bytes in " + path);
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kVersion) {
    throw FormatError("unsupported checkpoint version " +
                      std::to_string(version));
  }

  LoadedCheckpoint loaded;
  NcfParams& params = loaded.params;
  const auto kind = r.get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(PersonalityKind::hard_coded)) {
    throw FormatError("unknown mode tag " + std::to_string(kind));
  }
  params.mode.kind = static_cast<PersonalityKind>(kind);
  const auto trait_byte = r.get<std::uint8_t>();
  if (trait_byte >= kTraitCount) {
    throw FormatError("invalid trait tag " + std::to_string(trait_byte));
  }
  params.mode.same_trait = static_cast<Trait>(trait_byte);
  const auto policy_byte = r.get<std::uint8_t>();
  if (policy_byte > 1) {
    throw FormatError("invalid hard-vector policy " + std::to_string(policy_byte));
  }
  params.mode.hard_policy = static_cast<HardVectorPolicy>(policy_byte);
  r.get<std::uint8_t>();  // reserved
  params.mode.label_seed = r.get<std::uint64_t>();
  params.mode.temperature = r.get<double>();

  const auto users = r.get<std::uint32_t>();
  const auto items = r.get<std::uint32_t>();
  const auto embed_dim = r.get<std::uint32_t>();
  if (embed_dim != kEmbeddingDim) {
    throw FormatError("checkpoint embedding width " + std::to_string(embed_dim) +
                      ", expected " + std::to_string(kEmbeddingDim));
  }
  const auto trait_rows = r.get<std::uint32_t>();
  const auto trait_cols = r.get<std::uint32_t>();
  const auto n_layers = r.get<std::uint32_t>();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> layer_dims;
  layer_dims.reserve(n_layers);
  for (std::uint32_t l = 0; l < n_layers; ++l) {
    const auto rows = r.get<std::uint32_t>();
    const auto cols = r.get<std::uint32_t>();
    layer_dims.emplace_back(rows, cols);
  }
  loaded.train_seed = r.get<std::uint64_t>();
  loaded.epoch = r.get<std::uint32_t>();

  params.user_emb = Matrix(users, embed_dim);
  r.get_f32_tensor(params.user_emb.values);
  params.item_emb = Matrix(items, embed_dim);
  r.get_f32_tensor(params.item_emb.values);
  if (trait_rows > 0) {
    params.trait_emb = Matrix(trait_rows, trait_cols);
    r.get_f32_tensor(params.trait_emb.values);
  }
  for (const auto& [rows, cols] : layer_dims) {
    MlpLayer layer;
    layer.weight = Matrix(rows, cols);
    r.get_f32_tensor(layer.weight.values);
    layer.bias.assign(cols, 0.0);
    r.get_f32_tensor(layer.bias);
    params.mlp.layers.push_back(std::move(layer));
  }
  if (r.remaining() != 0) {
    throw FormatError("checkpoint has " + std::to_string(r.remaining()) +
                      " trailing bytes");
  }
  params.validate();
  return loaded;
}

LoadedCheckpoint load_checkpoint(const std::string& path,
                                 PersonalityKind expected) {
  LoadedCheckpoint loaded = load_checkpoint(path);
  if (loaded.params.mode.kind != expected) {
    throw ConfigError("checkpoint mode '" +
                      std::string(personality_kind_name(loaded.params.mode.kind)) +
                      "' does not match requested mode '" +
                      std::string(personality_kind_name(expected)) + "'");
  }
  return loaded;
}

}  // namespace pncf
