// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "core/types.hpp"

namespace ftddvs {

/// Structured P1 triangulation of the unit square. Each grid cell is split
/// into two triangles along the (lower-left, upper-right) diagonal.
struct Mesh2D {
  int nx = 0;
  int ny = 0;
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> boundary_flags;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_free() const { return (nx - 1) * (ny - 1); }

  int vertex_id(int i, int j) const { return j * (nx + 1) + i; }
  double signed_area(int t) const;
};

/// Two-subdomain split of the free dofs along the vertical line x1 = 0.5.
/// Index sets refer to positions in the free-dof numbering.
struct DomainPartition {
  double interface_coordinate = 0.5;
  std::vector<int> interior_dofs[2];        // I_1, I_2
  std::vector<int> interface_dofs;          // Gamma
  std::vector<int> restriction_maps[2];     // R_j: global interface idx -> local

  int n_interface() const { return static_cast<int>(interface_dofs.size()); }
  int n_interior(int j) const { return static_cast<int>(interior_dofs[j].size()); }
};

Mesh2D build_mesh(int nx, int ny);

/// Free-dof numbering: interior grid vertices in row-major order.
/// Returns vertex id -> free dof id (-1 on the Dirichlet boundary).
std::vector<int> free_dof_map(const Mesh2D& mesh);

DomainPartition build_partition(const Mesh2D& mesh);

/// Subdomain of a triangle: 0 for x1 < 0.5, 1 for x1 > 0.5 (by centroid).
int triangle_subdomain(const Mesh2D& mesh, int t);

}  // namespace ftddvs
