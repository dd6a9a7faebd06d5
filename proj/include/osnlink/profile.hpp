#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osnlink/strsim.hpp"

namespace osnlink {

enum class Platform { TwitterLike, FlickrLike };

/// "twitter" / "flickr", the names used in the JSONL files.
std::string_view platform_name(Platform p) noexcept;
std::optional<Platform> parse_platform(std::string_view name) noexcept;

struct UserProfile {
  Platform platform = Platform::TwitterLike;
  std::string user_id;
  std::string user_name;
  std::string real_name;
  std::string description;
  std::string location;
  std::uint64_t post_count = 0;
};

using FeatureSchema = std::shared_ptr<const std::vector<std::string>>;

/// Numeric features for one candidate account pair. Vectors produced by the
/// same extractor share one schema instance.
struct PairFeatureVector {
  std::vector<double> values;
  FeatureSchema schema;
  std::optional<bool> label;

  std::size_t size() const noexcept { return values.size(); }
};

/// min/max of the lifetime post counts; 1 when both are zero.
double post_ratio(std::uint64_t a, std::uint64_t b) noexcept;

/// Similarity of one text field: the measure's normalized score, except that
/// a field present on one side only scores 0 and a field absent on both
/// sides scores 1.
double field_similarity(Measure m, std::string_view a, std::string_view b);

/// Feature names, in order: with names
/// [user_name_score, real_name_score, post_ratio, description_score, location_score],
/// without names the last three.
FeatureSchema ps_schema(bool include_names);

/// Profile-similarity features of a cross-platform pair under one measure.
/// Throws Error(SamePlatform) when both profiles come from the same platform.
PairFeatureVector extract_ps_features(const UserProfile& a, const UserProfile& b, Measure m,
                                      bool include_names);

/// All nine measures side by side: four text features per measure (two when
/// names are excluded) followed by a single post_ratio; 37 or 19 values.
FeatureSchema ps_all_measures_schema(bool include_names);
PairFeatureVector extract_ps_features_all(const UserProfile& a, const UserProfile& b,
                                          bool include_names);

struct LabeledProfilePair {
  const UserProfile* a = nullptr;
  const UserProfile* b = nullptr;
  std::optional<bool> label;
};

std::vector<PairFeatureVector> featurize_pairs(std::span<const LabeledProfilePair> pairs,
                                               Measure m, bool include_names);

}  // namespace osnlink
