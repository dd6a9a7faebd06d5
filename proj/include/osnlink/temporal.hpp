#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osnlink/profile.hpp"

namespace osnlink {

using Timestamp = std::chrono::sys_seconds;

struct PostEvent {
  Platform platform = Platform::TwitterLike;
  std::string user_id;
  Timestamp timestamp{};
};

/// Parses "YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)" into UTC.
/// Throws Error(InvalidTimestamp) on malformed input, a missing zone, or an
/// instant outside [1990-01-01, now].
Timestamp parse_timestamp(std::string_view iso8601);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);

enum class TemporalMode { HourOfDay, DayOfWeek };

std::string_view temporal_mode_name(TemporalMode mode) noexcept;  // "hod" / "dow"
std::optional<TemporalMode> parse_temporal_mode(std::string_view name) noexcept;

/// 24 bins for hour of day, 7 for day of week.
std::size_t bin_count(TemporalMode mode) noexcept;

/// UTC hour (0-23) or ISO weekday with Monday = 0.
std::size_t bin_of(Timestamp t, TemporalMode mode) noexcept;

struct ActivityHistogram {
  TemporalMode mode = TemporalMode::HourOfDay;
  std::vector<std::uint64_t> counts;
};

struct ActivityMask {
  TemporalMode mode = TemporalMode::HourOfDay;
  std::vector<bool> active;
};

/// Throws Error(MixedUser) unless every event belongs to one account.
ActivityHistogram build_histogram(std::span<const PostEvent> events, TemporalMode mode);

ActivityMask to_mask(const ActivityHistogram& histogram);

/// |x AND y| / |x OR y|; two all-false masks score 0.
/// Throws Error(ModeMismatch) when the masks use different binnings.
double boolean_jaccard(const ActivityMask& x, const ActivityMask& y);

FeatureSchema temporal_schema(TemporalMode mode);

/// mask_a (0/1) ++ mask_b (0/1) ++ [jaccard]: 49 values for hour of day,
/// 15 for day of week.
PairFeatureVector extract_temporal_features(std::span<const PostEvent> a_events,
                                            std::span<const PostEvent> b_events,
                                            TemporalMode mode);

}  // namespace osnlink
