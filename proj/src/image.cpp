#include "pf/image.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <fstream>

#include "pf/errors.hpp"

namespace pf {

namespace {

void put_u32_be(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

void append_chunk(std::vector<unsigned char>& out, const char type[4],
                  const std::vector<unsigned char>& data) {
  put_u32_be(out, static_cast<std::uint32_t>(data.size()));
  std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  uLong crc = crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
  put_u32_be(out, static_cast<std::uint32_t>(crc));
}

void write_png(const std::string& path, const std::vector<unsigned char>& pixels,
               int width, int height, int channels) {
  if (pixels.size() != static_cast<std::size_t>(width) * height * channels)
    throw DimensionMismatchError("png: pixel buffer size does not match dimensions");

  // filter byte 0 per scanline
  std::vector<unsigned char> raw;
  raw.reserve(static_cast<std::size_t>(height) * (1 + width * channels));
  for (int y = 0; y < height; ++y) {
    raw.push_back(0);
    const unsigned char* row = pixels.data() + static_cast<std::size_t>(y) * width * channels;
    raw.insert(raw.end(), row, row + static_cast<std::size_t>(width) * channels);
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(),
                static_cast<uLong>(raw.size()), 9) != Z_OK)
    throw IoError("png: deflate failed");
  compressed.resize(bound);

  std::vector<unsigned char> file;
  const unsigned char sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  file.insert(file.end(), sig, sig + 8);

  std::vector<unsigned char> ihdr;
  put_u32_be(ihdr, static_cast<std::uint32_t>(width));
  put_u32_be(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(8);                                  // bit depth
  ihdr.push_back(channels == 1 ? 0 : 2);              // gray / truecolor
  ihdr.push_back(0);                                  // compression
  ihdr.push_back(0);                                  // filter
  ihdr.push_back(0);                                  // no interlace
  append_chunk(file, "IHDR", ihdr);
  append_chunk(file, "IDAT", compressed);
  append_chunk(file, "IEND", {});

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(file.data()),
            static_cast<std::streamsize>(file.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void write_png_gray(const std::string& path,
                    const std::vector<unsigned char>& pixels, int width,
                    int height) {
  write_png(path, pixels, width, height, 1);
}

void write_png_rgb(const std::string& path,
                   const std::vector<unsigned char>& pixels, int width,
                   int height) {
  write_png(path, pixels, width, height, 3);
}

}  // namespace pf
