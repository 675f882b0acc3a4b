#pragma once

#include <string>
#include <vector>

namespace pf {

// Minimal deterministic PNG writers (8-bit, non-interlaced, zlib-deflated).
void write_png_gray(const std::string& path,
                    const std::vector<unsigned char>& pixels, int width,
                    int height);
void write_png_rgb(const std::string& path,
                   const std::vector<unsigned char>& pixels,  // 3 bytes/pixel
                   int width, int height);

}  // namespace pf
