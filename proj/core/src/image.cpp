#include "algoprob/image.hpp"

#include <cctype>

#include "algoprob/errors.hpp"
#include "algoprob/io.hpp"

namespace algoprob {

namespace {

__extension__ typedef __int128 Int128;

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> data) : data_(data) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(data_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long header_int() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) throw DataError("malformed PNM header");
    long v = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      v = v * 10 + (data_[pos_++] - '0');
      if (v > 1'000'000'000) throw DataError("PNM header value too large");
    }
    return v;
  }

  std::uint16_t ascii_sample(int max_value) {
    long v = header_int();
    if (v > max_value) throw DataError("PNM sample exceeds max value");
    return static_cast<std::uint16_t>(v);
  }

  std::uint16_t binary_sample(int max_value) {
    std::uint32_t v;
    if (max_value < 256) {
      if (pos_ >= data_.size()) throw DataError("truncated PNM raster");
      v = data_[pos_++];
    } else {
      if (pos_ + 1 >= data_.size()) throw DataError("truncated PNM raster");
      v = (static_cast<std::uint32_t>(data_[pos_]) << 8) | data_[pos_ + 1];
      pos_ += 2;
    }
    if (v > static_cast<std::uint32_t>(max_value)) throw DataError("PNM sample exceeds max value");
    return static_cast<std::uint16_t>(v);
  }

  // Exactly one whitespace byte separates the header from a binary raster.
  void end_binary_header() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) throw DataError("malformed PNM header");
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::span<const std::uint8_t> data() const { return data_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::uint16_t luminance(std::uint32_t r, std::uint32_t g, std::uint32_t b) {
  return static_cast<std::uint16_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

}  // namespace

GrayImage parse_pnm(std::span<const std::uint8_t> data) {
  if (data.size() < 2 || data[0] != 'P') throw DataError("not a PNM image");
  const char kind = static_cast<char>(data[1]);
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw DataError(std::string("unsupported PNM variant P") + kind);
  }
  PnmReader in(data);
  in.advance(2);
  const long cols = in.header_int();
  const long rows = in.header_int();
  const long max_value = in.header_int();
  if (cols <= 0 || rows <= 0) throw DataError("PNM image has no pixels");
  if (max_value < 1 || max_value > 65535) throw DataError("PNM max value out of range");
  if (cols * rows > 100'000'000) throw DataError("PNM image too large");

  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';
  if (binary) in.end_binary_header();

  GrayImage img;
  img.rows = static_cast<int>(rows);
  img.cols = static_cast<int>(cols);
  img.max_value = static_cast<int>(max_value);
  img.pixels.resize(static_cast<std::size_t>(rows * cols));
  const int mv = img.max_value;
  auto sample = [&] { return binary ? in.binary_sample(mv) : in.ascii_sample(mv); };
  for (auto& px : img.pixels) {
    if (color) {
      const std::uint32_t r = sample();
      const std::uint32_t g = sample();
      const std::uint32_t b = sample();
      px = luminance(r, g, b);
    } else {
      px = sample();
    }
  }
  return img;
}

GrayImage read_pnm(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  try {
    return parse_pnm(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

int otsu_threshold(std::span<const std::uint64_t> histogram) {
  std::uint64_t n = 0;
  std::uint64_t sum = 0;
  for (std::size_t v = 0; v < histogram.size(); ++v) {
    n += histogram[v];
    sum += histogram[v] * v;
  }
  // sigma_B^2(t) is proportional to (n*S0 - n0*S)^2 / (n0*n1).
  int best = -1;
  long double best_score = -1;
  std::uint64_t n0 = 0;
  std::uint64_t s0 = 0;
  for (std::size_t t = 0; t + 1 < histogram.size(); ++t) {
    n0 += histogram[t];
    s0 += histogram[t] * t;
    const std::uint64_t n1 = n - n0;
    if (n0 == 0 || n1 == 0) continue;
    const Int128 diff = static_cast<Int128>(n) * s0 - static_cast<Int128>(n0) * sum;
    const long double d = static_cast<long double>(diff);
    const long double score = d * d / (static_cast<long double>(n0) * static_cast<long double>(n1));
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(t);
    }
  }
  return best;
}

Binarization binarize(const GrayImage& image) {
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(image.max_value) + 1, 0);
  for (auto px : image.pixels) ++hist[px];
  Binarization out;
  out.threshold = otsu_threshold(hist);
  if (out.threshold < 0) {
    out.threshold = image.max_value;
    out.degenerate = true;
  }
  out.bits.rows = image.rows;
  out.bits.cols = image.cols;
  out.bits.cells.resize(image.pixels.size());
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    out.bits.cells[i] = image.pixels[i] > out.threshold ? 1 : 0;
  }
  return out;
}

}  // namespace algoprob
