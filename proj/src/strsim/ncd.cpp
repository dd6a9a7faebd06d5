#include <algorithm>
#include <cassert>
#include <vector>

#include <boost/iostreams/device/back_inserter.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#include "osnlink/strsim.hpp"

namespace osnlink {

std::size_t bzip2_size(std::string_view bytes) {
  namespace io = boost::iostreams;
  std::vector<char> compressed;
  {
    io::filtering_ostream out;
    // Block size only changes the header digit; 100k blocks keep the
    // per-call allocation small for short profile fields.
    out.push(io::bzip2_compressor(io::bzip2_params(1)));
    out.push(io::back_inserter(compressed));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  return compressed.size();
}

double ncd_bzip2(const Text& a, const Text& b) {
  const std::string sa = a.utf8();
  const std::string sb = b.utf8();
  const auto ca = static_cast<double>(bzip2_size(sa));
  const auto cb = static_cast<double>(bzip2_size(sb));
  const auto cab = static_cast<double>(bzip2_size(sa + sb));
  const double hi = std::max(ca, cb);
  assert(hi > 0.0 && "bzip2 output always carries a header");
  return std::max(0.0, (cab - std::min(ca, cb)) / hi);
}

}  // namespace osnlink
