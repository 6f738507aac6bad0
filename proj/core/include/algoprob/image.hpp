#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace algoprob {

// Single-channel image with samples in [0, max_value].
struct GrayImage {
  int rows = 0;
  int cols = 0;
  int max_value = 255;
  std::vector<std::uint16_t> pixels;  // row-major

  std::uint16_t at(int r, int c) const { return pixels[static_cast<std::size_t>(r * cols + c)]; }
};

struct BitMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cells;  // row-major, 0 or 1

  std::span<const std::uint8_t> row(int r) const {
    return {cells.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols),
            static_cast<std::size_t>(cols)};
  }
};

// Parses portable anymaps: P2/P5 (gray) and P3/P6 (color). Color images are
// reduced to luminance round(0.299 R + 0.587 G + 0.114 B). Throws DataError
// on malformed input.
GrayImage parse_pnm(std::span<const std::uint8_t> data);
GrayImage read_pnm(const std::filesystem::path& path);

struct Binarization {
  BitMatrix bits;
  int threshold = 0;
  bool degenerate = false;  // fewer than two distinct levels
};

// Otsu's threshold: the smallest t maximizing the between-class variance of
// {v <= t} and {v > t}; -1 when no t splits the histogram into two
// non-empty classes.
int otsu_threshold(std::span<const std::uint64_t> histogram);

// value > threshold -> 1. A constant image maps to all zeros with the
// threshold at max_value and `degenerate` set.
Binarization binarize(const GrayImage& image);

}  // namespace algoprob
