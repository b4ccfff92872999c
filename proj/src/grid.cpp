// Copyright 2026 zgamma contributors
// SPDX-License-Identifier: Apache-2.0

#include "zgamma/grid.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "zgamma/errors.hpp"

namespace zgamma {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double trap_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void GridSpec::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw domain_error("GridSpec: bounds must be ordered");
  }
  if (!power_of_two(nx) || !power_of_two(ny)) {
    throw domain_error("GridSpec: nx and ny must be powers of two");
  }
}

double OutcomeGrid::mass() const {
  double total = 0.0;
  for (int j = 0; j < spec.ny; ++j) {
    double wy = trap_weight(j, spec.ny);
    for (int i = 0; i < spec.nx; ++i) {
      total += wy * trap_weight(i, spec.nx) * raw(i, j);
    }
  }
  return total * spec.dx() * spec.dy();
}

std::string grid_to_csv(const OutcomeGrid& grid) {
  std::string out = "x,y,density\n";
  out.reserve(out.size() + static_cast<size_t>(grid.spec.nx) * grid.spec.ny * 60);
  for (int j = 0; j < grid.spec.ny; ++j) {
    for (int i = 0; i < grid.spec.nx; ++i) {
      out += fmt17(grid.spec.x(i));
      out += ',';
      out += fmt17(grid.spec.y(j));
      out += ',';
      out += fmt17(grid.value(i, j));
      out += '\n';
    }
  }
  return out;
}

std::string grid_to_json(const OutcomeGrid& grid) {
  // moments by the trapezoid rule, normalized by the grid mass
  double m = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int j = 0; j < grid.spec.ny; ++j) {
    double y = grid.spec.y(j);
    double wy = trap_weight(j, grid.spec.ny);
    for (int i = 0; i < grid.spec.nx; ++i) {
      double x = grid.spec.x(i);
      double w = wy * trap_weight(i, grid.spec.nx) * grid.raw(i, j);
      m += w;
      sx += w * x;
      sy += w * y;
      sxx += w * x * x;
      syy += w * y * y;
      sxy += w * x * y;
    }
  }
  double mx = sx / m, my = sy / m;
  nlohmann::json j;
  j["x_min"] = grid.spec.x_min;
  j["x_max"] = grid.spec.x_max;
  j["y_min"] = grid.spec.y_min;
  j["y_max"] = grid.spec.y_max;
  j["nx"] = grid.spec.nx;
  j["ny"] = grid.spec.ny;
  j["mass"] = m * grid.spec.dx() * grid.spec.dy();
  j["min_raw"] = grid.min_raw;
  j["quasi"] = grid.quasi;
  j["moments"] = {{"mean_x", mx},
                  {"mean_y", my},
                  {"var_x", sxx / m - mx * mx},
                  {"var_y", syy / m - my * my},
                  {"cov_xy", sxy / m - mx * my}};
  return j.dump(2);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace zgamma
