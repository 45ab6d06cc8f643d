#pragma once

#include <filesystem>
#include <iosfwd>

#include "legipulation/cloud.hpp"

namespace legipulation {

// ASCII PCD v0.7. Reads any FIELDS layout that contains x, y and z (other
// columns are skipped); writes exactly
//
//   # .PCD v0.7 - Point Cloud Data file format
//   VERSION 0.7
//   FIELDS x y z
//   SIZE 8 8 8
//   TYPE F F F
//   COUNT 1 1 1
//   WIDTH <n>
//   HEIGHT 1
//   VIEWPOINT 0 0 0 1 0 0 0
//   POINTS <n>
//   DATA ascii
//
// followed by one "x y z" row per point in shortest round-trip decimal form.
// Rows with a non-finite coordinate are counted against POINTS but dropped.

PointCloud readPcd(std::istream& in);
PointCloud loadPcd(const std::filesystem::path& path);

void writePcd(std::ostream& out, const PointCloud& cloud);
void savePcd(const std::filesystem::path& path, const PointCloud& cloud);

}  // namespace legipulation
