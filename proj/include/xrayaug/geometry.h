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

#ifndef XRAYAUG_GEOMETRY_H_
#define XRAYAUG_GEOMETRY_H_

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace xrayaug {

struct ImageExtent {
  int width = 0;
  int height = 0;

  bool valid() const { return width >= 1 && height >= 1; }
  bool operator==(const ImageExtent&) const = default;
};

// Integer pixel rectangle, half-open: [x, x + width) x [y, y + height).
struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool operator==(const PixelRect&) const = default;
};

// Axis-aligned box in continuous pixel units, COCO convention: top-left
// origin, y grows downward, (x_min, y_min, width, height).
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double width = 0.0;
  double height = 0.0;

  static BoundingBox FromCorners(double x0, double y0, double x1, double y1) {
    return {x0, y0, x1 - x0, y1 - y0};
  }

  double x_max() const { return x_min + width; }
  double y_max() const { return y_min + height; }
  double area() const { return width * height; }
  bool valid() const { return width > 0.0 && height > 0.0; }

  bool operator==(const BoundingBox&) const = default;
};

double intersection_area(const BoundingBox& a, const BoundingBox& b);

// Intersection over union; 0 for disjoint boxes.
double iou(const BoundingBox& a, const BoundingBox& b);

// True iff every IoU between `box` and `others` is below `threshold`.
bool is_isolated(const BoundingBox& box, std::span<const BoundingBox> others,
                 double threshold);

// Indices of boxes whose max IoU against every other box in the same list is
// below `threshold`.
std::vector<size_t> isolated_indices(std::span<const BoundingBox> boxes,
                                     double threshold);

// Box clipped to [0, W] x [0, H]; nullopt if nothing positive-area remains.
std::optional<BoundingBox> clip_to_extent(const BoundingBox& box,
                                          ImageExtent extent);

bool within_extent(const BoundingBox& box, ImageExtent extent);

// Pixel cells covered by the box, edges rounded half-up, at least one pixel
// wide and tall, clamped to the extent.
PixelRect pixel_region(const BoundingBox& box, ImageExtent extent);

struct HFlip {
  ImageExtent extent;
};

struct VFlip {
  ImageExtent extent;
};

// Boxes keep the clipped part if it covers at least `min_retained` of the
// original area.
struct Crop {
  ImageExtent extent;
  PixelRect window;
  double min_retained = 0.25;
};

// k clockwise quarter turns of an image with the given (pre-rotation) extent.
struct Rotate90 {
  ImageExtent extent;
  int k = 1;
};

struct Scale {
  double sx = 1.0;
  double sy = 1.0;
};

using BoxTransform = std::variant<HFlip, VFlip, Crop, Rotate90, Scale>;

// nullopt means the box was dropped (crop only). Throws ParameterError for a
// crop window outside the extent or k outside {1, 2, 3}.
std::optional<BoundingBox> transform_box(const BoundingBox& box,
                                         const BoxTransform& transform);

// Axis-aligned hull of the box rotated clockwise by `degrees` about the
// centre of `extent`, clipped to the extent. Hulls are looser than the
// object for angles that are not multiples of 90.
std::optional<BoundingBox> rotate_box_hull(const BoundingBox& box,
                                           ImageExtent extent, double degrees);

}  // namespace xrayaug

#endif  // XRAYAUG_GEOMETRY_H_
