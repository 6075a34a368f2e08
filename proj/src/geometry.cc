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

#include "xrayaug/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xrayaug/errors.h"

namespace xrayaug {

double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.x_max(), b.x_max()) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max(), b.y_max()) - std::max(a.y_min, b.y_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  return iw * ih;
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

bool is_isolated(const BoundingBox& box, std::span<const BoundingBox> others,
                 double threshold) {
  return std::all_of(others.begin(), others.end(),
                     [&](const BoundingBox& o) { return iou(box, o) < threshold; });
}

std::vector<size_t> isolated_indices(std::span<const BoundingBox> boxes,
                                     double threshold) {
  std::vector<size_t> out;
  for (size_t i = 0; i < boxes.size(); ++i) {
    bool isolated = true;
    for (size_t j = 0; j < boxes.size() && isolated; ++j) {
      if (j != i && iou(boxes[i], boxes[j]) >= threshold) isolated = false;
    }
    if (isolated) out.push_back(i);
  }
  return out;
}

std::optional<BoundingBox> clip_to_extent(const BoundingBox& box,
                                          ImageExtent extent) {
  const double x0 = std::clamp(box.x_min, 0.0, double(extent.width));
  const double y0 = std::clamp(box.y_min, 0.0, double(extent.height));
  const double x1 = std::clamp(box.x_max(), 0.0, double(extent.width));
  const double y1 = std::clamp(box.y_max(), 0.0, double(extent.height));
  if (x1 <= x0 || y1 <= y0) return std::nullopt;
  if (x0 == box.x_min && y0 == box.y_min && x1 == box.x_max() &&
      y1 == box.y_max()) {
    return box;
  }
  return BoundingBox::FromCorners(x0, y0, x1, y1);
}

bool within_extent(const BoundingBox& box, ImageExtent extent) {
  return box.valid() && box.x_min >= 0.0 && box.y_min >= 0.0 &&
         box.x_max() <= extent.width && box.y_max() <= extent.height;
}

PixelRect pixel_region(const BoundingBox& box, ImageExtent extent) {
  auto round_half_up = [](double v) { return int(std::floor(v + 0.5)); };
  int x0 = std::clamp(round_half_up(box.x_min), 0, extent.width - 1);
  int y0 = std::clamp(round_half_up(box.y_min), 0, extent.height - 1);
  int x1 = std::clamp(round_half_up(box.x_max()), x0 + 1, extent.width);
  int y1 = std::clamp(round_half_up(box.y_max()), y0 + 1, extent.height);
  return {x0, y0, x1 - x0, y1 - y0};
}

namespace {

BoundingBox apply(const BoundingBox& b, const HFlip& t) {
  return {t.extent.width - b.x_min - b.width, b.y_min, b.width, b.height};
}

BoundingBox apply(const BoundingBox& b, const VFlip& t) {
  return {b.x_min, t.extent.height - b.y_min - b.height, b.width, b.height};
}

BoundingBox apply(const BoundingBox& b, const Rotate90& t) {
  const double w = t.extent.width;
  const double h = t.extent.height;
  switch (t.k) {
    case 1:
      return {h - b.y_min - b.height, b.x_min, b.height, b.width};
    case 2:
      return {w - b.x_min - b.width, h - b.y_min - b.height, b.width, b.height};
    case 3:
      return {b.y_min, w - b.x_min - b.width, b.height, b.width};
    default:
      throw ParameterError("rotate90: k must be 1, 2 or 3, got " +
                           std::to_string(t.k));
  }
}

BoundingBox apply(const BoundingBox& b, const Scale& t) {
  return {b.x_min * t.sx, b.y_min * t.sy, b.width * t.sx, b.height * t.sy};
}

std::optional<BoundingBox> apply(const BoundingBox& b, const Crop& t) {
  const PixelRect& w = t.window;
  if (w.width < 1 || w.height < 1 || w.x < 0 || w.y < 0 ||
      w.x + w.width > t.extent.width || w.y + w.height > t.extent.height) {
    throw ParameterError("crop window outside image extent");
  }
  const BoundingBox window{double(w.x), double(w.y), double(w.width),
                           double(w.height)};
  const double inter = intersection_area(b, window);
  if (inter <= 0.0 || inter < t.min_retained * b.area()) return std::nullopt;
  const double x0 = std::max(b.x_min, window.x_min) - w.x;
  const double y0 = std::max(b.y_min, window.y_min) - w.y;
  const double x1 = std::min(b.x_max(), window.x_max()) - w.x;
  const double y1 = std::min(b.y_max(), window.y_max()) - w.y;
  return BoundingBox::FromCorners(x0, y0, x1, y1);
}

}  // namespace

std::optional<BoundingBox> transform_box(const BoundingBox& box,
                                         const BoxTransform& transform) {
  return std::visit(
      [&](const auto& t) -> std::optional<BoundingBox> { return apply(box, t); },
      transform);
}

std::optional<BoundingBox> rotate_box_hull(const BoundingBox& box,
                                           ImageExtent extent, double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = extent.width / 2.0;
  const double cy = extent.height / 2.0;
  const double xs[] = {box.x_min, box.x_max(), box.x_max(), box.x_min};
  const double ys[] = {box.y_min, box.y_min, box.y_max(), box.y_max()};
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (int i = 0; i < 4; ++i) {
    // Clockwise on screen (y down) is the usual positive rotation matrix.
    const double dx = xs[i] - cx;
    const double dy = ys[i] - cy;
    const double rx = cx + c * dx - s * dy;
    const double ry = cy + s * dx + c * dy;
    x0 = std::min(x0, rx);
    y0 = std::min(y0, ry);
    x1 = std::max(x1, rx);
    y1 = std::max(y1, ry);
  }
  return clip_to_extent(BoundingBox::FromCorners(x0, y0, x1, y1), extent);
}

}  // namespace xrayaug
