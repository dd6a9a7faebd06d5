#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "osnlink/error.hpp"
#include "osnlink/mlp.hpp"

namespace osnlink {

namespace {

constexpr std::array<char, 8> kMagic = {'O', 'S', 'N', 'L', 'M', 'L', 'P', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u32(std::uint32_t v) { little_endian(v, 4); }
  void u64(std::uint64_t v) { little_endian(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

 private:
  void little_endian(std::uint64_t v, int bytes) {
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out_.write(buf, bytes);
  }
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(4)); }
  std::uint64_t u64() { return little_endian(8); }
  double f64() { return std::bit_cast<double>(u64()); }

  /// Sizes read from the file are bounded before allocating.
  std::uint64_t size(std::uint64_t limit, const char* what) {
    const std::uint64_t v = u64();
    if (v > limit) fail(ErrorKind::FormatError, std::string("model file: implausible ") + what);
    return v;
  }

 private:
  std::uint64_t little_endian(int bytes) {
    unsigned char buf[8] = {};
    if (!in_.read(reinterpret_cast<char*>(buf), bytes)) {
      fail(ErrorKind::FormatError, "model file truncated");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
  }
  std::istream& in_;
};

constexpr std::uint64_t kMaxDim = 1u << 24;

}  // namespace

void save_model(const MlpModel& model, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  Writer w(out);
  w.u32(kFormatVersion);
  const auto& c = model.config;
  w.u64(c.input_dim);
  w.u64(c.hidden_nodes);
  w.u64(c.n_hidden_layers);
  w.u64(c.output_dim);
  w.f64(c.dropout_rate);
  w.f64(c.learning_rate);
  w.f64(c.adam_beta1);
  w.f64(c.adam_beta2);
  w.f64(c.adam_eps);
  w.u64(c.batch_size);
  w.u64(c.max_epochs);
  w.u64(c.early_stop_patience);
  w.u64(c.rng_seed);
  w.u32(static_cast<std::uint32_t>(model.layers.size()));
  for (const auto& layer : model.layers) {
    w.u64(static_cast<std::uint64_t>(layer.weights.rows()));
    w.u64(static_cast<std::uint64_t>(layer.weights.cols()));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index col = 0; col < layer.weights.cols(); ++col) w.f64(layer.weights(r, col));
    }
    w.u64(static_cast<std::uint64_t>(layer.bias.size()));
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) w.f64(layer.bias(i));
  }
  if (!out) fail(ErrorKind::IoError, "failed writing model");
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot create " + path.string());
  save_model(model, out);
}

MlpModel load_model(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    fail(ErrorKind::FormatError, "not a model file (bad magic)");
  }
  Reader r(in);
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    fail(ErrorKind::FormatError, "unsupported model format version " + std::to_string(version));
  }
  MlpModel model;
  auto& c = model.config;
  c.input_dim = r.size(kMaxDim, "input_dim");
  c.hidden_nodes = r.size(kMaxDim, "hidden_nodes");
  c.n_hidden_layers = r.size(1024, "layer count");
  c.output_dim = r.size(kMaxDim, "output_dim");
  c.dropout_rate = r.f64();
  c.learning_rate = r.f64();
  c.adam_beta1 = r.f64();
  c.adam_beta2 = r.f64();
  c.adam_eps = r.f64();
  c.batch_size = r.u64();
  c.max_epochs = r.u64();
  c.early_stop_patience = r.u64();
  c.rng_seed = r.u64();
  c.validate();

  const std::uint32_t n_layers = r.u32();
  if (n_layers != c.n_hidden_layers + 1) {
    fail(ErrorKind::FormatError, "layer count disagrees with config");
  }
  std::uint64_t expected_rows = c.input_dim;
  for (std::uint32_t l = 0; l < n_layers; ++l) {
    const std::uint64_t expected_cols = (l + 1 == n_layers) ? c.output_dim : c.hidden_nodes;
    const std::uint64_t rows = r.size(kMaxDim, "row count");
    const std::uint64_t cols = r.size(kMaxDim, "column count");
    if (rows != expected_rows || cols != expected_cols) {
      fail(ErrorKind::FormatError, "layer " + std::to_string(l) + " has unexpected shape");
    }
    DenseLayer layer;
    layer.weights.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) layer.weights(i, j) = r.f64();
    }
    const std::uint64_t bias_len = r.size(kMaxDim, "bias length");
    if (bias_len != cols) fail(ErrorKind::FormatError, "bias length disagrees with layer width");
    layer.bias.resize(static_cast<Eigen::Index>(bias_len));
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = r.f64();
    model.layers.push_back(std::move(layer));
    expected_rows = cols;
  }
  // Optimizer state is not persisted; a loaded model starts a fresh Adam run.
  for (const auto& layer : model.layers) {
    for (auto* g : {&model.adam.first_moment, &model.adam.second_moment}) {
      g->weights.push_back(Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
      g->biases.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
    }
  }
  return model;
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  return load_model(in);
}

}  // namespace osnlink
