// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/mesh.hpp"

#include <stdexcept>
#include <string>

namespace ftddvs {

double Mesh2D::signed_area(int t) const {
  const auto& tri = triangles[t];
  const auto& a = vertices[tri[0]];
  const auto& b = vertices[tri[1]];
  const auto& c = vertices[tri[2]];
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

Mesh2D build_mesh(int nx, int ny) {
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("build_mesh: nx and ny must be >= 2, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  Mesh2D mesh;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.vertices.reserve((nx + 1) * (ny + 1));
  mesh.boundary_flags.reserve((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      mesh.vertices.push_back({double(i) / nx, double(j) / ny});
      mesh.boundary_flags.push_back(i == 0 || i == nx || j == 0 || j == ny);
    }
  }
  mesh.triangles.reserve(2 * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = mesh.vertex_id(i, j);
      const int v10 = mesh.vertex_id(i + 1, j);
      const int v01 = mesh.vertex_id(i, j + 1);
      const int v11 = mesh.vertex_id(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

std::vector<int> free_dof_map(const Mesh2D& mesh) {
  std::vector<int> map(mesh.n_vertices(), -1);
  int next = 0;
  if (mesh.nx % 2 == 0) {
    // Blocked numbering [I_1 | I_2 | Gamma]: the partition index sets are
    // contiguous ranges, which keeps ROM mode expansion a single block
    // write per subdomain.
    const int mid = mesh.nx / 2;
    for (int j = 1; j < mesh.ny; ++j)
      for (int i = 1; i < mid; ++i) map[mesh.vertex_id(i, j)] = next++;
    for (int j = 1; j < mesh.ny; ++j)
      for (int i = mid + 1; i < mesh.nx; ++i) map[mesh.vertex_id(i, j)] = next++;
    for (int j = 1; j < mesh.ny; ++j) map[mesh.vertex_id(mid, j)] = next++;
  } else {
    for (int j = 1; j < mesh.ny; ++j)
      for (int i = 1; i < mesh.nx; ++i) map[mesh.vertex_id(i, j)] = next++;
  }
  return map;
}

int triangle_subdomain(const Mesh2D& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  double cx = (mesh.vertices[tri[0]][0] + mesh.vertices[tri[1]][0] +
               mesh.vertices[tri[2]][0]) / 3.0;
  return cx < 0.5 ? 0 : 1;
}

DomainPartition build_partition(const Mesh2D& mesh) {
  if (mesh.nx % 2 != 0)
    throw std::invalid_argument(
        "build_partition: nx must be even so the interface x1=0.5 aligns "
        "with mesh edges");
  DomainPartition part;
  const int mid = mesh.nx / 2;
  const auto dof = free_dof_map(mesh);
  for (int j = 1; j < mesh.ny; ++j) {
    for (int i = 1; i < mesh.nx; ++i) {
      const int d = dof[mesh.vertex_id(i, j)];
      if (i == mid)
        part.interface_dofs.push_back(d);
      else
        part.interior_dofs[i < mid ? 0 : 1].push_back(d);
    }
  }
  // Both subdomains see the entire dividing line, in the same order.
  const int ng = part.n_interface();
  for (int j = 0; j < 2; ++j) {
    part.restriction_maps[j].resize(ng);
    for (int k = 0; k < ng; ++k) part.restriction_maps[j][k] = k;
  }
  return part;
}

}  // namespace ftddvs
