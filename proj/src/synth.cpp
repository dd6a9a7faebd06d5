#include "osnlink/synth.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <string_view>

#include "osnlink/error.hpp"
#include "osnlink/rng.hpp"

namespace osnlink {

namespace {

using namespace std::chrono;

constexpr std::array<std::string_view, 48> kFirstNames = {
    "james",   "mary",    "robert",  "patricia", "john",    "jennifer", "michael", "linda",
    "david",   "elizabeth", "william", "barbara", "richard", "susan",   "joseph",  "jessica",
    "thomas",  "sarah",   "charles", "karen",    "chris",   "lisa",     "daniel",  "nancy",
    "matthew", "betty",   "anthony", "sandra",   "mark",    "ashley",   "steven",  "kimberly",
    "kofi",    "priya",   "wei",     "aarav",    "sofia",   "mateo",    "yuki",    "hana",
    "omar",    "fatima",  "lukas",   "elena",    "ivan",    "chloe",    "noah",    "zara"};

constexpr std::array<std::string_view, 48> kLastNames = {
    "smith",    "johnson",  "williams", "brown",   "jones",    "garcia",  "miller",  "davis",
    "rodriguez", "martinez", "hernandez", "lopez", "gonzalez", "wilson",  "anderson", "thomas",
    "taylor",   "moore",    "jackson",  "martin",  "lee",      "perez",   "thompson", "white",
    "harris",   "sanchez",  "clark",    "ramirez", "lewis",    "robinson", "walker", "young",
    "lim",      "tan",      "nguyen",   "chen",    "wang",     "kumar",   "patel",   "singh",
    "kowalski", "novak",    "schmidt",  "muller",  "rossi",    "silva",   "sato",    "kim"};

constexpr std::array<std::string_view, 10> kPhrases = {
    "coffee lover",      "amateur photographer", "travel addict", "music fan",
    "software developer", "dog person",          "foodie",        "weekend runner",
    "bookworm",          "nature enthusiast"};

constexpr std::array<std::string_view, 15> kCities = {
    "melbourne", "sydney",  "singapore", "london", "new york",
    "paris",     "berlin",  "tokyo",     "toronto", "san francisco",
    "brisbane",  "auckland", "seoul",    "madrid",  "chicago"};

// Letters that stay within an Editex letter group when substituted.
constexpr std::array<std::string_view, 9> kSoundAlike = {"aeiouy", "bp", "ckq", "dt", "lr",
                                                         "mn",     "gj", "fpv", "sxz"};

constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kDigits = "0123456789";

// Drift probabilities per account, as multiples of the noise level.
constexpr double kDescriptionDrift = 2.0;
constexpr double kLocationDrift = 2.0;
constexpr double kPostCountSpread = 8.0;  // sd of log post-count factor per unit noise
constexpr double kEmptyDescription = 0.2;
constexpr double kEmptyLocation = 0.15;

// Posting schedule.
constexpr int kMinPosts = 20;
constexpr int kMaxPosts = 40;
constexpr int kMaxSessions = 3;
constexpr int kMaxSessionHours = 3;
constexpr double kActiveDayShare = 0.6;
constexpr double kDayJitterShare = 0.1;  // day noise relative to hour jitter

char pick(std::string_view chars, Rng& rng) { return chars[rng.below(chars.size())]; }

std::string capitalize(std::string_view word) {
  std::string out(word);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 32);
  return out;
}

char sound_alike(char c, Rng& rng) {
  for (const auto group : kSoundAlike) {
    if (group.find(c) != std::string_view::npos && group.size() > 1) {
      char other = c;
      while (other == c) other = pick(group, rng);
      return other;
    }
  }
  return pick(kAlphabet, rng);
}

/// Applies a random edit at each position with probability `noise`.
std::string perturb(const std::string& original, double noise, Rng& rng) {
  if (noise <= 0.0) return original;
  std::string out;
  for (std::size_t i = 0; i < original.size(); ++i) {
    const char c = original[i];
    if (!rng.bernoulli(noise)) {
      out.push_back(c);
      continue;
    }
    const double kind = rng.uniform();
    if (kind < 0.2 && c >= 'a' && c <= 'z') {
      out.push_back(sound_alike(c, rng));
    } else if (kind < 0.4) {
      out.push_back(c >= 'a' && c <= 'z' ? pick(kAlphabet, rng) : c);
    } else if (kind < 0.6) {
      // deletion
    } else if (kind < 0.8) {
      out.push_back(c);
      out.push_back(rng.bernoulli(0.3) ? pick(kDigits, rng) : pick(kAlphabet, rng));
    } else if (i + 1 < original.size()) {
      out.push_back(original[i + 1]);
      out.push_back(c);
      ++i;
    } else {
      out.push_back(c);
    }
  }
  if (out.empty()) out = original;
  return out;
}

std::string make_description(Rng& rng) {
  if (rng.bernoulli(kEmptyDescription)) return {};
  const std::size_t first = rng.below(kPhrases.size());
  std::size_t second = rng.below(kPhrases.size() - 1);
  if (second >= first) ++second;
  return std::string(kPhrases[first]) + ". " + std::string(kPhrases[second]);
}

std::string make_location(Rng& rng) {
  if (rng.bernoulli(kEmptyLocation)) return {};
  return capitalize(kCities[rng.below(kCities.size())]);
}

std::string make_username(std::string_view first, std::string_view last, Rng& rng) {
  std::string base;
  switch (rng.below(5)) {
    case 0: base = std::string(first) + std::string(last); break;
    case 1: base = std::string(1, first[0]) + std::string(last); break;
    case 2: base = std::string(first) + "_" + std::string(last); break;
    case 3: base = std::string(last) + std::string(1, first[0]); break;
    default: base = std::string(first) + std::string(last.substr(0, 3)); break;
  }
  if (rng.bernoulli(0.4)) base += std::to_string(rng.between(1, 99));
  return base;
}

struct Person {
  std::string real_name;
  std::string user_name;
  std::string description;
  std::string location;
  double activity = 0.0;
  std::vector<int> hours;
  std::vector<int> days;
};

Person make_person(Rng& rng, std::set<std::string>& used_names, std::set<std::string>& used_handles) {
  Person p;
  std::string first;
  std::string last;
  do {
    first = std::string(kFirstNames[rng.below(kFirstNames.size())]);
    last = std::string(kLastNames[rng.below(kLastNames.size())]);
    p.real_name = capitalize(first) + " " + capitalize(last);
    if (used_names.contains(p.real_name)) {
      p.real_name = capitalize(first) + " " + static_cast<char>('A' + rng.below(26)) + ". " +
                    capitalize(last);
    }
  } while (used_names.contains(p.real_name));
  used_names.insert(p.real_name);

  p.user_name = make_username(first, last, rng);
  while (used_handles.contains(p.user_name)) p.user_name += pick(kDigits, rng);
  used_handles.insert(p.user_name);

  p.description = make_description(rng);
  p.location = make_location(rng);
  p.activity = std::exp(5.0 + 1.2 * rng.normal());

  std::set<int> hours;
  const auto sessions = rng.between(1, kMaxSessions);
  for (std::int64_t s = 0; s < sessions; ++s) {
    const auto start = rng.between(0, 23);
    const auto length = rng.between(1, kMaxSessionHours);
    for (std::int64_t h = 0; h < length; ++h) hours.insert(static_cast<int>((start + h) % 24));
  }
  p.hours.assign(hours.begin(), hours.end());

  while (p.days.empty()) {
    for (int d = 0; d < 7; ++d) {
      if (rng.bernoulli(kActiveDayShare)) p.days.push_back(d);
    }
  }
  return p;
}

std::string unique_id(std::set<std::string>& used, Rng& rng, bool flickr_style) {
  for (;;) {
    std::string id;
    if (flickr_style) {
      id = std::to_string(rng.between(10000000, 99999999)) + "@N0" + std::to_string(rng.between(1, 8));
    } else {
      id = std::to_string(rng.between(100000000, 9999999999LL));
    }
    if (used.insert(id).second) return id;
  }
}

}  // namespace

SynthCorpus generate_synthetic(const SynthOptions& options) {
  if (options.n_users < 10) fail(ErrorKind::InvalidArgument, "synth needs at least 10 users");
  if (!(options.noise >= 0.0 && options.noise <= 1.0)) {
    fail(ErrorKind::InvalidArgument, "noise must lie in [0, 1]");
  }
  const double noise = options.noise;
  Rng rng(options.seed);
  SynthCorpus out;
  std::set<std::string> used_names;
  std::set<std::string> used_handles;
  std::set<std::string> used_ids;
  // Monday 2019-01-07; posts fall within the following two years.
  const sys_days first_monday = year{2019} / January / 7;

  for (std::size_t i = 0; i < options.n_users; ++i) {
    const Person person = make_person(rng, used_names, used_handles);
    std::array<UserProfile, 2> accounts;
    for (std::size_t side = 0; side < 2; ++side) {
      UserProfile& acc = accounts[side];
      acc.platform = side == 0 ? Platform::TwitterLike : Platform::FlickrLike;
      acc.user_id = unique_id(used_ids, rng, side == 1);
      acc.user_name = perturb(person.user_name, noise, rng);
      acc.real_name = perturb(person.real_name, noise, rng);
      acc.description = rng.bernoulli(std::min(1.0, kDescriptionDrift * noise))
                            ? make_description(rng)
                            : person.description;
      acc.location = rng.bernoulli(std::min(1.0, kLocationDrift * noise)) ? make_location(rng)
                                                                          : person.location;
      const double factor = std::exp(kPostCountSpread * noise * rng.normal());
      acc.post_count = static_cast<std::uint64_t>(std::llround(person.activity * factor));

      const auto n_posts = rng.between(kMinPosts, kMaxPosts);
      for (std::int64_t k = 0; k < n_posts; ++k) {
        int hour = person.hours[rng.below(person.hours.size())];
        int day = person.days[rng.below(person.days.size())];
        if (rng.bernoulli(noise)) hour = (hour + (rng.bernoulli(0.5) ? 1 : 23)) % 24;
        if (rng.bernoulli(noise * kDayJitterShare)) day = static_cast<int>(rng.below(7));
        const auto week = rng.below(104);
        const sys_seconds when = first_monday + days{7 * week + static_cast<unsigned>(day)} +
                                 hours{hour} + minutes{rng.below(60)} + seconds{rng.below(60)};
        out.posts.push_back({acc.platform, acc.user_id, when});
      }
    }
    out.pairs.push_back({accounts[0].user_id, accounts[1].user_id});
    out.profiles.push_back(std::move(accounts[0]));
    out.profiles.push_back(std::move(accounts[1]));
  }
  return out;
}

void write_synthetic(const SynthCorpus& corpus, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(out_dir / name, std::ios::binary);
    if (!f) fail(ErrorKind::IoError, "cannot create " + (out_dir / name).string());
    return f;
  };
  auto profiles = open("profiles.jsonl");
  write_profiles_jsonl(profiles, corpus.profiles);
  auto posts = open("posts.jsonl");
  write_posts_jsonl(posts, corpus.posts);
  auto pairs = open("pairs.csv");
  write_pairs_csv(pairs, corpus.pairs);
  if (!profiles || !posts || !pairs) fail(ErrorKind::IoError, "failed writing synthetic corpus");
}

Corpus to_corpus(const SynthCorpus& corpus) {
  return build_corpus(corpus.profiles, corpus.posts, corpus.pairs);
}

}  // namespace osnlink
