#include "osnlink/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "osnlink/error.hpp"
#include "osnlink/rng.hpp"

namespace osnlink {

namespace {

constexpr std::uint64_t kWordDomain = 0x776f7264;  // "word"
constexpr std::uint64_t kCharDomain = 0x63686172;  // "char"

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' ||
         c == 0xA0 || c == 0x3000;
}

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  fail(ErrorKind::MalformedLine, "embedding file line " + std::to_string(line) + ": " + why);
}

struct Header {
  std::size_t count = 0;
  std::size_t dim = 0;
};

Header parse_header(const std::string& text, std::size_t line_no) {
  std::istringstream in(text);
  Header h;
  std::string extra;
  if (!(in >> h.count >> h.dim) || (in >> extra) || h.dim == 0) {
    malformed(line_no, "expected header \"<count> <dim>\"");
  }
  return h;
}

/// Reads `count` vector rows into `out`. Returns the next unread line, if any.
void read_rows(std::istream& in, const Header& header, std::size_t& line_no,
               std::unordered_map<std::string, std::vector<double>>& out) {
  std::string line;
  for (std::size_t row = 0; row < header.count; ++row) {
    if (!std::getline(in, line)) {
      malformed(line_no + 1, "expected " + std::to_string(header.count) + " rows, found " +
                                 std::to_string(row));
    }
    ++line_no;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) malformed(line_no, "empty row");
    std::vector<double> values;
    values.reserve(header.dim);
    std::string field;
    while (fields >> field) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || *end != '\0' || !std::isfinite(v)) {
        malformed(line_no, "not a finite number: '" + field + "'");
      }
      values.push_back(v);
    }
    if (values.size() != header.dim) {
      fail(ErrorKind::DimensionMismatch,
           "embedding file line " + std::to_string(line_no) + ": " +
               std::to_string(values.size()) + " values, header declares " +
               std::to_string(header.dim));
    }
    out[Text(token).utf8()] = std::move(values);
  }
}

/// Character n-grams of a token padded with '<' and '>'.
std::vector<std::string> padded_ngrams(std::string_view token) {
  const std::u32string padded = U"<" + decode_utf8(token) + U">";
  std::vector<std::string> out;
  for (std::size_t i = 0; i + kCharNgram <= padded.size(); ++i) {
    out.push_back(encode_utf8(padded.substr(i, kCharNgram)));
  }
  return out;
}

std::vector<double> mean_of(std::vector<double> sum, std::size_t n) {
  if (n > 0) {
    for (auto& v : sum) v /= static_cast<double>(n);
  }
  return sum;
}

}  // namespace

std::vector<double> hashed_unit_vector(std::string_view text, std::uint64_t seed,
                                       std::size_t dim, std::uint64_t domain) {
  Rng rng(mix_seed(fnv1a(text) ^ mix_seed(seed ^ mix_seed(domain))));
  std::vector<double> v(dim);
  double norm = 0.0;
  while (norm == 0.0 && dim > 0) {
    for (auto& x : v) {
      x = rng.uniform(-1.0, 1.0);
      norm += x * x;
    }
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

std::optional<std::vector<double>> EmbeddingTable::word_vector(std::string_view token) const {
  if (source == EmbeddingSource::HashFallback) {
    // Composed from subword vectors, so tokens that share n-grams point
    // in similar directions.
    std::vector<double> v(dim_word, 0.0);
    for (const auto& gram : padded_ngrams(token)) {
      const auto g = hashed_unit_vector(gram, seed, dim_word, kWordDomain);
      for (std::size_t i = 0; i < dim_word; ++i) v[i] += g[i];
    }
    double norm = 0.0;
    for (const double x : v) norm += x * x;
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (auto& x : v) x /= norm;
    }
    return v;
  }
  if (auto it = word_vectors.find(std::string(token)); it != word_vectors.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::vector<double> EmbeddingTable::char_vector(std::string_view ngram) const {
  if (source == EmbeddingSource::FileLoaded) {
    if (auto it = char_ngram_vectors.find(std::string(ngram)); it != char_ngram_vectors.end()) {
      return it->second;
    }
  }
  return hashed_unit_vector(ngram, seed, dim_char, kCharDomain);
}

EmbeddingTable make_hash_fallback(std::uint64_t seed, std::size_t dim_word, std::size_t dim_char) {
  if (dim_word + dim_char == 0) {
    fail(ErrorKind::InvalidArgument, "embedding dimension must be positive");
  }
  EmbeddingTable table;
  table.dim_word = dim_word;
  table.dim_char = dim_char;
  table.source = EmbeddingSource::HashFallback;
  table.seed = seed;
  return table;
}

EmbeddingTable load_embedding_stream(std::istream& words, std::istream* chars,
                                     std::uint64_t fallback_seed) {
  EmbeddingTable table;
  table.source = EmbeddingSource::FileLoaded;
  table.seed = fallback_seed;

  std::size_t line_no = 0;
  std::string line;
  if (!std::getline(words, line)) malformed(1, "empty file");
  ++line_no;
  const Header word_header = parse_header(line, line_no);
  table.dim_word = word_header.dim;
  read_rows(words, word_header, line_no, table.word_vectors);

  while (std::getline(words, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    constexpr std::string_view kMarker = "#char-ngrams";
    if (line.rfind(kMarker, 0) != 0) malformed(line_no, "unexpected content after word vectors");
    const Header char_header = parse_header(line.substr(kMarker.size()), line_no);
    table.dim_char = char_header.dim;
    read_rows(words, char_header, line_no, table.char_ngram_vectors);
  }

  if (chars != nullptr) {
    if (table.dim_char != 0) {
      fail(ErrorKind::InvalidArgument, "character n-grams supplied twice");
    }
    std::size_t char_line = 0;
    if (!std::getline(*chars, line)) malformed(1, "empty character n-gram file");
    ++char_line;
    const Header char_header = parse_header(line, char_line);
    table.dim_char = char_header.dim;
    read_rows(*chars, char_header, char_line, table.char_ngram_vectors);
  }
  return table;
}

EmbeddingTable load_embedding_file(const std::filesystem::path& path,
                                   const std::optional<std::filesystem::path>& char_path,
                                   std::uint64_t fallback_seed) {
  std::ifstream words(path);
  if (!words) fail(ErrorKind::IoError, "cannot open embedding file " + path.string());
  if (char_path) {
    std::ifstream chars(*char_path);
    if (!chars) fail(ErrorKind::IoError, "cannot open embedding file " + char_path->string());
    return load_embedding_stream(words, &chars, fallback_seed);
  }
  return load_embedding_stream(words, nullptr, fallback_seed);
}

std::vector<std::string> tokenize(const Text& text) {
  std::vector<std::string> tokens;
  std::u32string current;
  for (const char32_t c : text.chars()) {
    if (is_space(c)) {
      if (!current.empty()) tokens.push_back(encode_utf8(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(encode_utf8(current));
  return tokens;
}

std::vector<double> embed_field(const Text& text, const EmbeddingTable& table) {
  std::vector<double> word_sum(table.dim_word, 0.0);
  std::vector<double> char_sum(table.dim_char, 0.0);
  std::size_t words_found = 0;
  std::size_t ngrams = 0;
  for (const auto& token : tokenize(text)) {
    if (table.dim_word > 0) {
      if (auto v = table.word_vector(token)) {
        for (std::size_t i = 0; i < table.dim_word; ++i) word_sum[i] += (*v)[i];
        ++words_found;
      }
    }
    if (table.dim_char > 0) {
      for (const auto& gram : padded_ngrams(token)) {
        const auto v = table.char_vector(gram);
        for (std::size_t k = 0; k < table.dim_char; ++k) char_sum[k] += v[k];
        ++ngrams;
      }
    }
  }
  std::vector<double> out = mean_of(std::move(word_sum), words_found);
  const auto chars = mean_of(std::move(char_sum), ngrams);
  out.insert(out.end(), chars.begin(), chars.end());
  return out;
}

FeatureSchema embedding_schema(const EmbeddingTable& table, bool include_description) {
  static std::mutex guard;
  static std::map<std::tuple<std::size_t, std::size_t, bool>, FeatureSchema> cache;
  const auto key = std::make_tuple(table.dim_word, table.dim_char, include_description);
  std::lock_guard lock(guard);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<std::string> names;
  std::vector<std::string> fields = {"user_name", "real_name"};
  if (include_description) fields.emplace_back("description");
  for (const auto& field : fields) {
    for (std::size_t i = 0; i < table.dim(); ++i) {
      names.push_back(field + ".delta[" + std::to_string(i) + "]");
    }
    names.push_back(field + ".cosine");
  }
  auto schema = std::make_shared<const std::vector<std::string>>(std::move(names));
  cache.emplace(key, schema);
  return schema;
}

PairFeatureVector pair_embedding_features(const UserProfile& a, const UserProfile& b,
                                          const EmbeddingTable& table, bool include_description) {
  if (a.platform == b.platform) {
    fail(ErrorKind::SamePlatform,
         "pair '" + a.user_id + "' / '" + b.user_id + "' is on a single platform");
  }
  std::vector<std::pair<const std::string*, const std::string*>> fields = {
      {&a.user_name, &b.user_name}, {&a.real_name, &b.real_name}};
  if (include_description) fields.emplace_back(&a.description, &b.description);

  PairFeatureVector out;
  out.values.reserve(fields.size() * (table.dim() + 1));
  for (const auto& [fa, fb] : fields) {
    const auto ea = embed_field(Text(*fa), table);
    const auto eb = embed_field(Text(*fb), table);
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < ea.size(); ++i) {
      out.values.push_back(1.0 / (1.0 + std::abs(ea[i] - eb[i])));
      dot += ea[i] * eb[i];
      na += ea[i] * ea[i];
      nb += eb[i] * eb[i];
    }
    double cosine = 0.0;
    if (ea == eb) {
      cosine = 1.0;
    } else if (na > 0.0 && nb > 0.0) {
      cosine = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
    }
    out.values.push_back((cosine + 1.0) / 2.0);
  }
  out.schema = embedding_schema(table, include_description);
  return out;
}

}  // namespace osnlink
