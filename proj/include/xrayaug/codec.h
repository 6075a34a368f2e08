// Copyright 2026 The xrayaug Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XRAYAUG_CODEC_H_
#define XRAYAUG_CODEC_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "xrayaug/image.h"

namespace xrayaug {

// Lossless. Fixed zlib settings, no timestamps or text chunks, so equal
// images always encode to equal bytes.
std::vector<uint8_t> encode_png(const PixelImage& image);
PixelImage decode_png(std::span<const uint8_t> bytes);

// Baseline JPEG, IJG quality scaling (1..100), 4:2:0 chroma subsampling,
// integer slow DCT, standard Huffman tables.
std::vector<uint8_t> encode_jpeg(const PixelImage& image, int quality);
PixelImage decode_jpeg(std::span<const uint8_t> bytes);

// Dispatches on the file signature. Throws CodecError for unknown formats.
PixelImage decode_image(std::span<const uint8_t> bytes);

std::vector<uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes);

PixelImage read_image(const std::filesystem::path& path);

}  // namespace xrayaug

#endif  // XRAYAUG_CODEC_H_
