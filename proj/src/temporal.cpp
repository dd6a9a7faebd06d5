#include "osnlink/temporal.hpp"

#include <cstdio>
#include <string>

#include "osnlink/error.hpp"

namespace osnlink {

namespace {

using namespace std::chrono;

[[noreturn]] void bad_timestamp(std::string_view text, std::string_view why) {
  fail(ErrorKind::InvalidTimestamp,
       "invalid timestamp '" + std::string(text) + "': " + std::string(why));
}

int digits(std::string_view text, std::size_t pos, std::size_t count, std::string_view whole) {
  if (pos + count > text.size()) bad_timestamp(whole, "truncated");
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') bad_timestamp(whole, "expected digit");
    value = value * 10 + (c - '0');
  }
  return value;
}

void expect(std::string_view text, std::size_t pos, char c, std::string_view whole) {
  if (pos >= text.size() || text[pos] != c) {
    bad_timestamp(whole, std::string("expected '") + c + "'");
  }
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  const int y = digits(text, 0, 4, text);
  expect(text, 4, '-', text);
  const int mo = digits(text, 5, 2, text);
  expect(text, 7, '-', text);
  const int d = digits(text, 8, 2, text);
  if (text.size() <= 10 || (text[10] != 'T' && text[10] != 't')) {
    bad_timestamp(text, "expected 'T'");
  }
  const int hh = digits(text, 11, 2, text);
  expect(text, 13, ':', text);
  const int mm = digits(text, 14, 2, text);
  expect(text, 16, ':', text);
  const int ss = digits(text, 17, 2, text);
  std::size_t pos = 19;
  if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) bad_timestamp(text, "empty fraction");
  }
  if (pos >= text.size()) bad_timestamp(text, "missing zone designator");
  int offset_minutes = 0;
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '+' ? 1 : -1;
    const int oh = digits(text, pos + 1, 2, text);
    std::size_t after = pos + 3;
    if (after < text.size() && text[after] == ':') ++after;
    const int om = digits(text, after, 2, text);
    if (oh > 23 || om > 59) bad_timestamp(text, "zone offset out of range");
    offset_minutes = sign * (oh * 60 + om);
    pos = after + 2;
  } else {
    bad_timestamp(text, "missing zone designator");
  }
  if (pos != text.size()) bad_timestamp(text, "trailing characters");

  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok()) bad_timestamp(text, "no such calendar date");
  if (hh > 23 || mm > 59 || ss > 60) bad_timestamp(text, "time of day out of range");

  const Timestamp t = sys_days{date} + hours{hh} + minutes{mm} + seconds{std::min(ss, 59)} -
                      minutes{offset_minutes};
  const Timestamp earliest = sys_days{year{1990} / January / 1};
  const auto now = time_point_cast<seconds>(system_clock::now());
  if (t < earliest || t > now) bad_timestamp(text, "outside [1990-01-01, now]");
  return t;
}

std::string format_timestamp(Timestamp t) {
  const auto day_start = floor<days>(t);
  const year_month_day date{day_start};
  const hh_mm_ss clock{t - day_start};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                static_cast<int>(clock.hours().count()), static_cast<int>(clock.minutes().count()),
                static_cast<int>(clock.seconds().count()));
  return buf;
}

std::string_view temporal_mode_name(TemporalMode mode) noexcept {
  return mode == TemporalMode::HourOfDay ? "hod" : "dow";
}

std::optional<TemporalMode> parse_temporal_mode(std::string_view name) noexcept {
  if (name == "hod" || name == "hour-of-day") return TemporalMode::HourOfDay;
  if (name == "dow" || name == "day-of-week") return TemporalMode::DayOfWeek;
  return std::nullopt;
}

std::size_t bin_count(TemporalMode mode) noexcept {
  return mode == TemporalMode::HourOfDay ? 24 : 7;
}

std::size_t bin_of(Timestamp t, TemporalMode mode) noexcept {
  const auto day_start = floor<days>(t);
  if (mode == TemporalMode::HourOfDay) {
    return static_cast<std::size_t>(duration_cast<hours>(t - day_start).count());
  }
  return weekday{day_start}.iso_encoding() - 1;
}

ActivityHistogram build_histogram(std::span<const PostEvent> events, TemporalMode mode) {
  ActivityHistogram h{mode, std::vector<std::uint64_t>(bin_count(mode), 0)};
  for (const auto& e : events) {
    if (e.user_id != events.front().user_id || e.platform != events.front().platform) {
      fail(ErrorKind::MixedUser, "histogram events mix accounts '" + events.front().user_id +
                                     "' and '" + e.user_id + "'");
    }
    ++h.counts[bin_of(e.timestamp, mode)];
  }
  return h;
}

ActivityMask to_mask(const ActivityHistogram& histogram) {
  ActivityMask mask{histogram.mode, std::vector<bool>(histogram.counts.size())};
  for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
    mask.active[i] = histogram.counts[i] > 0;
  }
  return mask;
}

double boolean_jaccard(const ActivityMask& x, const ActivityMask& y) {
  if (x.mode != y.mode || x.active.size() != y.active.size()) {
    fail(ErrorKind::ModeMismatch, "cannot compare activity masks of different binnings");
  }
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t i = 0; i < x.active.size(); ++i) {
    both += (x.active[i] && y.active[i]) ? 1 : 0;
    either += (x.active[i] || y.active[i]) ? 1 : 0;
  }
  return either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
}

FeatureSchema temporal_schema(TemporalMode mode) {
  auto build = [](TemporalMode m) {
    std::vector<std::string> names;
    const std::string tag(temporal_mode_name(m));
    for (const char* side : {"a", "b"}) {
      for (std::size_t i = 0; i < bin_count(m); ++i) {
        names.push_back(std::string(side) + "." + tag + "[" + std::to_string(i) + "]");
      }
    }
    names.push_back(tag + "_jaccard");
    return std::make_shared<const std::vector<std::string>>(std::move(names));
  };
  static const FeatureSchema hod = build(TemporalMode::HourOfDay);
  static const FeatureSchema dow = build(TemporalMode::DayOfWeek);
  return mode == TemporalMode::HourOfDay ? hod : dow;
}

PairFeatureVector extract_temporal_features(std::span<const PostEvent> a_events,
                                            std::span<const PostEvent> b_events,
                                            TemporalMode mode) {
  const auto mask_a = to_mask(build_histogram(a_events, mode));
  const auto mask_b = to_mask(build_histogram(b_events, mode));
  PairFeatureVector out;
  out.schema = temporal_schema(mode);
  out.values.reserve(out.schema->size());
  for (const bool bit : mask_a.active) out.values.push_back(bit ? 1.0 : 0.0);
  for (const bool bit : mask_b.active) out.values.push_back(bit ? 1.0 : 0.0);
  out.values.push_back(boolean_jaccard(mask_a, mask_b));
  return out;
}

}  // namespace osnlink
