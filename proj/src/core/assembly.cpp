// Copyright 2026 The ftddvs Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/assembly.hpp"

#include <array>
#include <set>
#include <stdexcept>

namespace ftddvs {

namespace {

struct LocalGeometry {
  double area;
  std::array<double, 3> b;  // d lambda_i / d x1
  std::array<double, 3> c;  // d lambda_i / d x2
};

LocalGeometry local_geometry(const Mesh2D& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const auto& p0 = mesh.vertices[tri[0]];
  const auto& p1 = mesh.vertices[tri[1]];
  const auto& p2 = mesh.vertices[tri[2]];
  const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                     (p2[0] - p0[0]) * (p1[1] - p0[1]);
  LocalGeometry g;
  g.area = 0.5 * det;
  g.b = {(p1[1] - p2[1]) / det, (p2[1] - p0[1]) / det, (p0[1] - p1[1]) / det};
  g.c = {(p2[0] - p1[0]) / det, (p0[0] - p2[0]) / det, (p1[0] - p0[0]) / det};
  return g;
}

void check_tags(const ProblemDefinition& problem) {
  std::set<std::string> seen;
  for (const auto& term : problem.op_terms) {
    if (!term.alpha)
      throw std::invalid_argument("assemble: op term '" + term.tag +
                                  "' has no coefficient evaluator");
    if (!seen.insert(term.tag).second)
      throw std::invalid_argument("assemble: duplicate coefficient tag '" +
                                  term.tag + "'");
  }
  for (const auto& src : problem.sources)
    if (!src.time_profile || !src.sigma || !src.space_profile)
      throw std::invalid_argument("assemble: source term '" + src.tag +
                                  "' is incompletely specified");
}

}  // namespace

Assembly assemble(const ProblemDefinition& problem, const Mesh2D& mesh) {
  if (mesh.nx % 2 != 0)
    throw std::invalid_argument(
        "assemble: nx must be even; the interface x1=0.5 must align with "
        "mesh edges");
  check_tags(problem);

  Assembly out;
  out.mesh = mesh;
  out.dof_map = free_dof_map(mesh);
  out.free_vertex.resize(mesh.n_free());
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (out.dof_map[v] >= 0) out.free_vertex[out.dof_map[v]] = v;

  const int nv = mesh.n_vertices();
  const int nf = mesh.n_free();
  const int m_a = problem.m_a();

  std::vector<std::vector<Triplet>> term_trips(m_a);
  std::vector<Triplet> mass_trips[2];

  // Per (source, subdomain) load vectors over all vertices.
  const int m_b = problem.m_b();
  std::vector<std::array<Vec, 2>> loads(m_b);
  for (int q = 0; q < m_b; ++q)
    loads[q] = {Vec::Zero(nv), Vec::Zero(nv)};

  const double mloc[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto g = local_geometry(mesh, t);
    const int sd = triangle_subdomain(mesh, t);

    for (int j = 0; j < m_a; ++j) {
      const auto& term = problem.op_terms[j];
      if (term.subdomain != sd) continue;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          double val = 0.0;
          if (term.kind == OpTermDef::Kind::Diffusion)
            val = g.area * (g.b[a] * g.b[b] + g.c[a] * g.c[b]);
          else
            val = g.area / 12.0 * mloc[a][b];
          term_trips[j].emplace_back(tri[a], tri[b], val);
        }
      }
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        mass_trips[sd].emplace_back(tri[a], tri[b], g.area / 12.0 * mloc[a][b]);

    // Edge-midpoint quadrature (exact for quadratics) for the loads.
    std::array<std::array<double, 2>, 3> mid;
    for (int e = 0; e < 3; ++e) {
      const auto& pa = mesh.vertices[tri[(e + 1) % 3]];
      const auto& pb = mesh.vertices[tri[(e + 2) % 3]];
      mid[e] = {0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])};
    }
    for (int q = 0; q < m_b; ++q) {
      const auto& src = problem.sources[q];
      if (src.support == Support::D1 && sd != 0) continue;
      if (src.support == Support::D2 && sd != 1) continue;
      std::array<double, 3> hv;
      for (int e = 0; e < 3; ++e) hv[e] = src.space_profile(mid[e][0], mid[e][1]);
      for (int a = 0; a < 3; ++a) {
        // psi_a is 1/2 on the two midpoints of edges touching vertex a.
        const double val = g.area / 3.0 * 0.5 * (hv[(a + 1) % 3] + hv[(a + 2) % 3]);
        loads[q][sd][tri[a]] += val;
      }
    }
  }

  auto build = [&](const std::vector<Triplet>& trips, int rows, int cols) {
    SpMat m(rows, cols);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
  };

  out.full_terms.reserve(m_a);
  for (int j = 0; j < m_a; ++j)
    out.full_terms.push_back(build(term_trips[j], nv, nv));
  {
    std::vector<Triplet> all = mass_trips[0];
    all.insert(all.end(), mass_trips[1].begin(), mass_trips[1].end());
    out.full_mass = build(all, nv, nv);
  }

  // Restrict to free dofs (row/column deletion of Dirichlet dofs).
  std::vector<int> free_ids(nf);
  for (int d = 0; d < nf; ++d) free_ids[d] = out.free_vertex[d];
  auto restrict_mat = [&](const SpMat& m) {
    return sparse_submatrix(m, free_ids, free_ids);
  };

  for (int j = 0; j < m_a; ++j)
    out.op.terms.push_back({problem.op_terms[j].tag, j,
                            problem.op_terms[j].subdomain,
                            restrict_mat(out.full_terms[j])});
  out.op.mass_sub[0] = restrict_mat(build(mass_trips[0], nv, nv));
  out.op.mass_sub[1] = restrict_mat(build(mass_trips[1], nv, nv));
  out.op.mass = out.op.mass_sub[0] + out.op.mass_sub[1];

  for (int q = 0; q < m_b; ++q) {
    Vec total = Vec::Zero(nf);
    for (int sd = 0; sd < 2; ++sd) {
      Vec part(nf);
      for (int d = 0; d < nf; ++d) part[d] = loads[q][sd][out.free_vertex[d]];
      total += part;
      const auto& src = problem.sources[q];
      const bool on_sd = src.support == Support::Both ||
                         (src.support == Support::D1 && sd == 0) ||
                         (src.support == Support::D2 && sd == 1);
      if (on_sd)
        out.rhs.sub_terms[sd].push_back({src.tag, q, part});
    }
    out.rhs.terms.push_back({problem.sources[q].tag, q, total});
  }
  return out;
}

SpCMat evaluate_operator(const AffineOperator& op, const ProblemDefinition& problem,
                         const ParameterPoint& mu) {
  SpMat real(op.mass.rows(), op.mass.cols());
  for (const auto& term : op.terms)
    real += problem.op_terms[term.problem_term].alpha(mu) * term.mat;
  SpCMat sys = real.cast<Complex>() + Complex(0.0, gamma_of(mu)) * op.mass.cast<Complex>();
  sys.makeCompressed();
  return sys;
}

SpMat sparse_submatrix(const SpMat& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  std::vector<int> row_of(m.rows(), -1), col_of(m.cols(), -1);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= m.rows())
      throw std::out_of_range("sparse_submatrix: row index out of range");
    row_of[rows[i]] = static_cast<int>(i);
  }
  for (size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] < 0 || cols[i] >= m.cols())
      throw std::out_of_range("sparse_submatrix: column index out of range");
    col_of[cols[i]] = static_cast<int>(i);
  }
  std::vector<Triplet> trips;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      const int r = row_of[it.row()];
      const int c = col_of[it.col()];
      if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  SpMat out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

BlockSet extract_blocks(const Assembly& asm_, const DomainPartition& part, int j) {
  if (j < 0 || j > 1) throw std::out_of_range("extract_blocks: subdomain index");
  const int nf = asm_.n_free();
  for (int d : part.interface_dofs)
    if (d < 0 || d >= nf)
      throw std::out_of_range("extract_blocks: partition inconsistent with assembly");

  BlockSet bs;
  bs.j = j;
  bs.interior = part.interior_dofs[j];
  bs.interface = part.interface_dofs;
  bs.local_of_global = part.restriction_maps[j];

  for (int n = 0; n < asm_.op.m_a(); ++n) {
    if (asm_.op.terms[n].subdomain != j) continue;
    const SpMat& A = asm_.op.terms[n].mat;
    bs.op_term_index.push_back(n);
    bs.A_II.push_back(sparse_submatrix(A, bs.interior, bs.interior));
    bs.A_IG.push_back(sparse_submatrix(A, bs.interior, bs.interface));
    bs.A_GI.push_back(sparse_submatrix(A, bs.interface, bs.interior));
    bs.A_GG.push_back(sparse_submatrix(A, bs.interface, bs.interface));
  }

  const SpMat& Mj = asm_.op.mass_sub[j];
  bs.M_II = sparse_submatrix(Mj, bs.interior, bs.interior);
  bs.M_IG = sparse_submatrix(Mj, bs.interior, bs.interface);
  bs.M_GI = sparse_submatrix(Mj, bs.interface, bs.interior);
  bs.M_GG = sparse_submatrix(Mj, bs.interface, bs.interface);

  for (const auto& term : asm_.rhs.sub_terms[j]) {
    bs.rhs_source_index.push_back(term.source_index);
    Vec fi(bs.n_i()), fg(bs.n_g());
    for (int k = 0; k < bs.n_i(); ++k) fi[k] = term.F[bs.interior[k]];
    for (int k = 0; k < bs.n_g(); ++k) fg[k] = term.F[bs.interface[k]];
    bs.f_I.push_back(fi);
    bs.f_G.push_back(fg);
  }
  return bs;
}

}  // namespace ftddvs
