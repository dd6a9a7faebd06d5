#include "osnlink/profile.hpp"

#include <algorithm>
#include <string>

#include "osnlink/error.hpp"

namespace osnlink {

namespace {

bool is_missing(std::string_view field) {
  return std::all_of(field.begin(), field.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

void require_cross_platform(const UserProfile& a, const UserProfile& b) {
  if (a.platform == b.platform) {
    fail(ErrorKind::SamePlatform, "pair '" + a.user_id + "' / '" + b.user_id +
                                      "' is on a single platform (" +
                                      std::string(platform_name(a.platform)) + ")");
  }
}

}  // namespace

std::string_view platform_name(Platform p) noexcept {
  return p == Platform::TwitterLike ? "twitter" : "flickr";
}

std::optional<Platform> parse_platform(std::string_view name) noexcept {
  if (name == "twitter") return Platform::TwitterLike;
  if (name == "flickr") return Platform::FlickrLike;
  return std::nullopt;
}

double post_ratio(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0 && b == 0) return 1.0;
  return static_cast<double>(std::min(a, b)) / static_cast<double>(std::max(a, b));
}

double field_similarity(Measure m, std::string_view a, std::string_view b) {
  const bool missing_a = is_missing(a);
  const bool missing_b = is_missing(b);
  if (missing_a && missing_b) return 1.0;
  if (missing_a || missing_b) return 0.0;
  return normalized_similarity(m, Text(a), Text(b));
}

FeatureSchema ps_schema(bool include_names) {
  static const FeatureSchema with_names = std::make_shared<const std::vector<std::string>>(
      std::vector<std::string>{"user_name_score", "real_name_score", "post_ratio",
                               "description_score", "location_score"});
  static const FeatureSchema without_names = std::make_shared<const std::vector<std::string>>(
      std::vector<std::string>{"post_ratio", "description_score", "location_score"});
  return include_names ? with_names : without_names;
}

PairFeatureVector extract_ps_features(const UserProfile& a, const UserProfile& b, Measure m,
                                      bool include_names) {
  require_cross_platform(a, b);
  PairFeatureVector out;
  out.schema = ps_schema(include_names);
  out.values.reserve(out.schema->size());
  if (include_names) {
    out.values.push_back(field_similarity(m, a.user_name, b.user_name));
    out.values.push_back(field_similarity(m, a.real_name, b.real_name));
  }
  out.values.push_back(post_ratio(a.post_count, b.post_count));
  out.values.push_back(field_similarity(m, a.description, b.description));
  out.values.push_back(field_similarity(m, a.location, b.location));
  return out;
}

FeatureSchema ps_all_measures_schema(bool include_names) {
  auto build = [](bool names) {
    std::vector<std::string> schema;
    for (const Measure m : kAllMeasures) {
      const std::string prefix(measure_name(m));
      if (names) {
        schema.push_back(prefix + ".user_name_score");
        schema.push_back(prefix + ".real_name_score");
      }
      schema.push_back(prefix + ".description_score");
      schema.push_back(prefix + ".location_score");
    }
    schema.emplace_back("post_ratio");
    return std::make_shared<const std::vector<std::string>>(std::move(schema));
  };
  static const FeatureSchema with_names = build(true);
  static const FeatureSchema without_names = build(false);
  return include_names ? with_names : without_names;
}

PairFeatureVector extract_ps_features_all(const UserProfile& a, const UserProfile& b,
                                          bool include_names) {
  require_cross_platform(a, b);
  PairFeatureVector out;
  out.schema = ps_all_measures_schema(include_names);
  out.values.reserve(out.schema->size());
  for (const Measure m : kAllMeasures) {
    if (include_names) {
      out.values.push_back(field_similarity(m, a.user_name, b.user_name));
      out.values.push_back(field_similarity(m, a.real_name, b.real_name));
    }
    out.values.push_back(field_similarity(m, a.description, b.description));
    out.values.push_back(field_similarity(m, a.location, b.location));
  }
  out.values.push_back(post_ratio(a.post_count, b.post_count));
  return out;
}

std::vector<PairFeatureVector> featurize_pairs(std::span<const LabeledProfilePair> pairs,
                                               Measure m, bool include_names) {
  std::vector<PairFeatureVector> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    auto features = extract_ps_features(*pair.a, *pair.b, m, include_names);
    features.label = pair.label;
    out.push_back(std::move(features));
  }
  return out;
}

}  // namespace osnlink
