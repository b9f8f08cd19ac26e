#include "qhom/module.hpp"

#include <algorithm>
#include <cassert>

#include "qhom/constructions.hpp"
#include "qhom/error.hpp"

namespace qhom {

ModuleRep::ModuleRep(AlgebraPtr A, std::vector<uint32_t> vdim, std::vector<FpMat> gen_mats)
    : A_(std::move(A)), vdim_(std::move(vdim)), gen_mats_(std::move(gen_mats)) {
    if (vdim_.size() != A_->num_vertices()) throw InvariantError("module: dimension vector length mismatch");
    offsets_.resize(vdim_.size() + 1, 0);
    for (size_t v = 0; v < vdim_.size(); ++v) offsets_[v + 1] = offsets_[v] + vdim_[v];
    total_ = offsets_.back();
    if (gen_mats_.size() != A_->generators.size()) throw InvariantError("module: one matrix per generator required");
    for (size_t k = 0; k < gen_mats_.size(); ++k) {
        const BasisElem& g = A_->basis[A_->generators[k]];
        if (gen_mats_[k].rows() != vdim_[g.tgt] || gen_mats_[k].cols() != vdim_[g.src])
            throw InvariantError("module: generator matrix shape mismatch for " + g.label);
    }
    memo_.assign(A_->dim(), std::nullopt);
}

ModulePtr mk_module(ModuleRep&& m) { return std::make_shared<const ModuleRep>(std::move(m)); }

const FpMat& ModuleRep::act(uint32_t b) const {
    if (memo_[b]) return *memo_[b];
    const BasisElem& be = A_->basis[b];
    FpMat result(field(), vdim_[be.tgt], vdim_[be.src]);
    if (be.deg == 0) {
        result = FpMat::identity(field(), vdim_[be.tgt]);
    } else if (be.deg == 1) {
        size_t k = std::find(A_->generators.begin(), A_->generators.end(), b) - A_->generators.begin();
        result = gen_mats_[k];
    } else {
        for (const auto& t : A_->factorization[b]) {
            FpMat prod = act(t.gen) * act(t.rest);
            result.add_in_place(prod, t.coeff);
        }
    }
    memo_[b] = std::move(result);
    return *memo_[b];
}

FpMat ModuleRep::act(const SparseElem& x, VertexId src, VertexId tgt) const {
    FpMat result(field(), vdim_[tgt], vdim_[src]);
    for (auto [b, c] : x) {
        assert(A_->basis[b].src == src && A_->basis[b].tgt == tgt);
        result.add_in_place(act(b), c);
    }
    return result;
}

void ModuleRep::validate() const {
    for (uint32_t g : A_->generators)
        for (uint32_t b = 0; b < A_->dim(); ++b) {
            if (!A_->composable(g, b)) continue;
            FpMat lhs = act(g) * act(b);
            FpMat rhs = act(A_->mul(g, b), A_->basis[b].src, A_->basis[g].tgt);
            if (!(lhs == rhs))
                throw InvariantError("module over '" + A_->name + "': action not multiplicative on (" +
                                     A_->basis[g].label + ", " + A_->basis[b].label + ")");
        }
}

bool ModuleRep::operator==(const ModuleRep& o) const {
    return A_ == o.A_ && vdim_ == o.vdim_ && gen_mats_ == o.gen_mats_;
}

void ModuleMap::validate() const {
    const BasedAlgebra& A = dom->algebra();
    if (cod->algebra_ptr().get() != &A) throw InvariantError("module map: algebra mismatch");
    if (comp.size() != A.num_vertices()) throw InvariantError("module map: one block per vertex required");
    for (size_t v = 0; v < comp.size(); ++v)
        if (comp[v].rows() != cod->vdim(v) || comp[v].cols() != dom->vdim(v))
            throw InvariantError("module map: block shape mismatch");
    for (size_t k = 0; k < A.generators.size(); ++k) {
        const BasisElem& g = A.basis[A.generators[k]];
        FpMat lhs = comp[g.tgt] * dom->gen_action(k);
        FpMat rhs = cod->gen_action(k) * comp[g.src];
        if (!(lhs == rhs))
            throw InvariantError("module map: does not intertwine generator " + g.label);
    }
}

bool ModuleMap::is_zero() const {
    return std::all_of(comp.begin(), comp.end(), [](const FpMat& m) { return m.is_zero(); });
}

bool ModuleMap::is_injective() const {
    for (size_t v = 0; v < comp.size(); ++v)
        if (comp[v].rank() != dom->vdim(v)) return false;
    return true;
}

bool ModuleMap::is_surjective() const {
    for (size_t v = 0; v < comp.size(); ++v)
        if (comp[v].rank() != cod->vdim(v)) return false;
    return true;
}

bool ModuleMap::is_isomorphism() const {
    return dom->dim_vector() == cod->dim_vector() && is_injective();
}

FpMat ModuleMap::total() const {
    FpMat m(dom->field(), cod->dim(), dom->dim());
    for (size_t v = 0; v < comp.size(); ++v)
        for (size_t i = 0; i < comp[v].rows(); ++i)
            for (size_t j = 0; j < comp[v].cols(); ++j)
                m.at(cod->offset(v) + i, dom->offset(v) + j) = comp[v].at(i, j);
    return m;
}

ModuleMap ModuleMap::identity(ModulePtr M) {
    ModuleMap f{M, M, {}};
    for (size_t v = 0; v < M->algebra().num_vertices(); ++v)
        f.comp.push_back(FpMat::identity(M->field(), M->vdim(v)));
    return f;
}

ModuleMap ModuleMap::zero(ModulePtr dom, ModulePtr cod) {
    ModuleMap f{dom, cod, {}};
    for (size_t v = 0; v < dom->algebra().num_vertices(); ++v)
        f.comp.push_back(FpMat(dom->field(), cod->vdim(v), dom->vdim(v)));
    return f;
}

ModuleMap ModuleMap::then(const ModuleMap& next) const {
    assert(cod.get() == next.dom.get() || cod->dim_vector() == next.dom->dim_vector());
    ModuleMap f{dom, next.cod, {}};
    for (size_t v = 0; v < comp.size(); ++v) f.comp.push_back(next.comp[v] * comp[v]);
    return f;
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
    ModuleMap f{dom, cod, {}};
    for (size_t v = 0; v < comp.size(); ++v) f.comp.push_back(comp[v] + o.comp[v]);
    return f;
}

ModuleMap ModuleMap::scaled(uint32_t c) const {
    ModuleMap f{dom, cod, {}};
    for (size_t v = 0; v < comp.size(); ++v) f.comp.push_back(comp[v].scaled(c));
    return f;
}

ModulePtr zero_module(AlgebraPtr A) {
    std::vector<uint32_t> vdim(A->num_vertices(), 0);
    std::vector<FpMat> mats;
    for (uint32_t g : A->generators) {
        const BasisElem& ge = A->basis[g];
        mats.push_back(FpMat(A->field, vdim[ge.tgt], vdim[ge.src]));
    }
    return mk_module(ModuleRep(A, std::move(vdim), std::move(mats)));
}

std::vector<uint32_t> proj_component_basis(const BasedAlgebra& A, VertexId v, VertexId u) {
    std::vector<uint32_t> out;
    for (uint32_t b = 0; b < A.dim(); ++b)
        if (A.basis[b].src == v && A.basis[b].tgt == u) out.push_back(b);
    return out;
}

ModulePtr standard_module(AlgebraPtr A, StandardKind kind, VertexId v) {
    if (v >= A->num_vertices()) throw InvariantError("standard_module: unknown vertex index " + std::to_string(v));
    Fp F = A->field;
    if (kind == StandardKind::simple) {
        std::vector<uint32_t> vdim(A->num_vertices(), 0);
        vdim[v] = 1;
        std::vector<FpMat> mats;
        for (uint32_t g : A->generators) {
            const BasisElem& ge = A->basis[g];
            mats.push_back(FpMat(F, vdim[ge.tgt], vdim[ge.src]));
        }
        return mk_module(ModuleRep(A, std::move(vdim), std::move(mats)));
    }
    if (kind == StandardKind::projective) {
        // P(v) = A e_v, basis the normal monomials starting at v, graded by target.
        std::vector<std::vector<uint32_t>> comp(A->num_vertices());
        std::vector<uint32_t> vdim(A->num_vertices(), 0);
        for (VertexId u = 0; u < A->num_vertices(); ++u) {
            comp[u] = proj_component_basis(*A, v, u);
            vdim[u] = static_cast<uint32_t>(comp[u].size());
        }
        auto position = [&](VertexId u, uint32_t b) {
            return static_cast<size_t>(std::find(comp[u].begin(), comp[u].end(), b) - comp[u].begin());
        };
        std::vector<FpMat> mats;
        for (uint32_t g : A->generators) {
            const BasisElem& ge = A->basis[g];
            FpMat m(F, vdim[ge.tgt], vdim[ge.src]);
            for (size_t j = 0; j < comp[ge.src].size(); ++j)
                for (auto [k, c] : A->mul(g, comp[ge.src][j])) m.at(position(ge.tgt, k), j) = c;
            mats.push_back(std::move(m));
        }
        return mk_module(ModuleRep(A, std::move(vdim), std::move(mats)));
    }
    // Injective I(v) = D(e_v A): the dual of the projective at v over the
    // opposite algebra (up to isomorphism; no separate injective engine).
    DualityContext dc(A);
    return dc.to_A(standard_module(dc.opposite(), StandardKind::projective, v));
}

ModulePtr regular_module(AlgebraPtr A) {
    std::vector<ModulePtr> parts;
    for (VertexId v = 0; v < A->num_vertices(); ++v) parts.push_back(standard_module(A, StandardKind::projective, v));
    return direct_sum(A, parts).total;
}

ModuleMap right_mult_map(AlgebraPtr A, const SparseElem& x, VertexId s, VertexId t) {
    ModulePtr Pt = standard_module(A, StandardKind::projective, t);
    ModulePtr Ps = standard_module(A, StandardKind::projective, s);
    ModuleMap f{Pt, Ps, {}};
    for (VertexId u = 0; u < A->num_vertices(); ++u) {
        auto dom_basis = proj_component_basis(*A, t, u);
        auto cod_basis = proj_component_basis(*A, s, u);
        FpMat m(A->field, cod_basis.size(), dom_basis.size());
        for (size_t j = 0; j < dom_basis.size(); ++j) {
            // (basis element y of P(t)) * x, expanded in P(s)'s basis.
            SparseElem prod = A->mul(SparseElem{{dom_basis[j], 1u}}, x);
            for (auto [k, c] : prod) {
                size_t i = std::find(cod_basis.begin(), cod_basis.end(), k) - cod_basis.begin();
                m.at(i, j) = c;
            }
        }
        f.comp.push_back(std::move(m));
    }
    return f;
}

std::vector<ModuleMap> hom_basis(const ModuleRep& M, const ModuleRep& N) {
    const BasedAlgebra& A = M.algebra();
    if (&N.algebra() != &A) throw InvariantError("hom_basis: modules over different algebras");
    Fp F = M.field();
    const size_t nv = A.num_vertices();
    // Unknowns: entries of f_v (N.vdim(v) x M.vdim(v)), flattened row-major.
    std::vector<size_t> var_off(nv + 1, 0);
    for (size_t v = 0; v < nv; ++v) var_off[v + 1] = var_off[v] + (size_t)N.vdim(v) * M.vdim(v);
    const size_t nvars = var_off[nv];
    size_t nrows = 0;
    for (size_t k = 0; k < A.generators.size(); ++k) {
        const BasisElem& g = A.basis[A.generators[k]];
        nrows += (size_t)N.vdim(g.tgt) * M.vdim(g.src);
    }
    FpMat sys(F, nrows, nvars);
    size_t row = 0;
    for (size_t k = 0; k < A.generators.size(); ++k) {
        const BasisElem& g = A.basis[A.generators[k]];
        const FpMat& GM = M.gen_action(k); // M_src -> M_tgt
        const FpMat& GN = N.gen_action(k);
        // Equation: f_tgt * GM - GN * f_src = 0, entry (i, j) with
        // i < N.vdim(tgt), j < M.vdim(src).
        for (size_t i = 0; i < N.vdim(g.tgt); ++i)
            for (size_t j = 0; j < M.vdim(g.src); ++j) {
                // sum_l f_tgt(i, l) GM(l, j) - sum_l GN(i, l) f_src(l, j)
                for (size_t l = 0; l < M.vdim(g.tgt); ++l) {
                    uint32_t c = GM.at(l, j);
                    if (c) {
                        size_t var = var_off[g.tgt] + i * M.vdim(g.tgt) + l;
                        sys.at(row, var) = F.add(sys.at(row, var), c);
                    }
                }
                for (size_t l = 0; l < N.vdim(g.src); ++l) {
                    uint32_t c = GN.at(i, l);
                    if (c) {
                        size_t var = var_off[g.src] + l * M.vdim(g.src) + j;
                        sys.at(row, var) = F.sub(sys.at(row, var), c);
                    }
                }
                ++row;
            }
    }
    FpMat ker = sys.kernel_basis();
    std::vector<ModuleMap> out;
    auto Mp = std::make_shared<const ModuleRep>(M);
    auto Np = std::make_shared<const ModuleRep>(N);
    for (size_t col = 0; col < ker.cols(); ++col) {
        ModuleMap f{Mp, Np, {}};
        for (size_t v = 0; v < nv; ++v) {
            FpMat block(F, N.vdim(v), M.vdim(v));
            for (size_t i = 0; i < N.vdim(v); ++i)
                for (size_t j = 0; j < M.vdim(v); ++j) block.at(i, j) = ker.at(var_off[v] + i * M.vdim(v) + j, col);
            f.comp.push_back(std::move(block));
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<ModuleMap> hom_basis(ModulePtr M, ModulePtr N) {
    auto out = hom_basis(*M, *N);
    for (auto& f : out) {
        f.dom = M;
        f.cod = N;
    }
    return out;
}

size_t hom_dim(const ModuleRep& M, const ModuleRep& N) { return hom_basis(M, N).size(); }

namespace {

// Build the module structure on a per-vertex collection of independent
// columns inside M (must be action-stable); returns module plus inclusion.
std::pair<ModulePtr, ModuleMap> module_on_subspace(ModulePtr M, const std::vector<FpMat>& cols) {
    const BasedAlgebra& A = M->algebra();
    std::vector<uint32_t> vdim(A.num_vertices());
    for (size_t v = 0; v < cols.size(); ++v) vdim[v] = static_cast<uint32_t>(cols[v].cols());
    std::vector<FpMat> mats;
    for (size_t k = 0; k < A.generators.size(); ++k) {
        const BasisElem& g = A.basis[A.generators[k]];
        FpMat image = M->gen_action(k) * cols[g.src];
        auto X = cols[g.tgt].solve(image);
        if (!X) throw InvariantError("module_on_subspace: subspace not action-stable");
        mats.push_back(std::move(*X));
    }
    ModulePtr sub = mk_module(ModuleRep(M->algebra_ptr(), std::move(vdim), std::move(mats)));
    ModuleMap incl{sub, M, {}};
    for (size_t v = 0; v < cols.size(); ++v) incl.comp.push_back(cols[v]);
    return {sub, incl};
}

} // namespace

std::pair<ModulePtr, ModuleMap> submodule_closure(ModulePtr M, const std::vector<FpMat>& seed_cols) {
    const BasedAlgebra& A = M->algebra();
    Fp F = M->field();
    std::vector<FpMat> span;
    for (size_t v = 0; v < A.num_vertices(); ++v)
        span.push_back(v < seed_cols.size() && seed_cols[v].cols() > 0
                           ? subspace::column_reduce(seed_cols[v])
                           : FpMat(F, M->vdim(v), 0));
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t k = 0; k < A.generators.size(); ++k) {
            const BasisElem& g = A.basis[A.generators[k]];
            if (span[g.src].cols() == 0) continue;
            FpMat img = M->gen_action(k) * span[g.src];
            FpMat bigger = subspace::sum(span[g.tgt], img);
            if (bigger.cols() > span[g.tgt].cols()) {
                span[g.tgt] = std::move(bigger);
                changed = true;
            }
        }
    }
    return module_on_subspace(M, span);
}

std::pair<ModulePtr, ModuleMap> quotient_module(ModulePtr M, const ModuleMap& inclusion) {
    const BasedAlgebra& A = M->algebra();
    Fp F = M->field();
    // Per vertex: complete the submodule basis, project onto the complement.
    std::vector<FpMat> comp_cols, proj_rows;
    for (size_t v = 0; v < A.num_vertices(); ++v) {
        FpMat sub = subspace::column_reduce(inclusion.comp[v]);
        FpMat comp = subspace::complement(sub, M->vdim(v));
        FpMat T = FpMat::hstack(sub, comp);
        if (T.cols() != M->vdim(v)) throw InvariantError("quotient_module: inclusion not full rank");
        FpMat Tinv = T.cols() ? *T.inverse() : FpMat(F, 0, 0);
        proj_rows.push_back(Tinv.sub_block(sub.cols(), 0, comp.cols(), M->vdim(v)));
        comp_cols.push_back(std::move(comp));
    }
    std::vector<uint32_t> vdim(A.num_vertices());
    for (size_t v = 0; v < A.num_vertices(); ++v) vdim[v] = static_cast<uint32_t>(comp_cols[v].cols());
    std::vector<FpMat> mats;
    for (size_t k = 0; k < A.generators.size(); ++k) {
        const BasisElem& g = A.basis[A.generators[k]];
        mats.push_back(proj_rows[g.tgt] * (M->gen_action(k) * comp_cols[g.src]));
    }
    ModulePtr Q = mk_module(ModuleRep(M->algebra_ptr(), std::move(vdim), std::move(mats)));
    ModuleMap proj{M, Q, proj_rows};
    return {Q, proj};
}

namespace {

std::pair<ModulePtr, ModuleMap> radical_submodule(ModulePtr M) {
    const BasedAlgebra& A = M->algebra();
    Fp F = M->field();
    std::vector<FpMat> radspan;
    for (size_t v = 0; v < A.num_vertices(); ++v) radspan.push_back(FpMat(F, M->vdim(v), 0));
    for (size_t k = 0; k < A.generators.size(); ++k) {
        const BasisElem& g = A.basis[A.generators[k]];
        radspan[g.tgt] = subspace::sum(radspan[g.tgt], M->gen_action(k).col_space_basis());
    }
    return module_on_subspace(M, radspan);
}

} // namespace

Layers layers(ModulePtr M) {
    const BasedAlgebra& A = M->algebra();
    Fp F = M->field();
    Layers L;
    std::tie(L.rad, L.rad_inclusion) = radical_submodule(M);
    std::tie(L.top, L.top_projection) = quotient_module(M, L.rad_inclusion);
    // socle: intersection of generator kernels, per source vertex.
    std::vector<FpMat> socspan;
    for (size_t v = 0; v < A.num_vertices(); ++v) {
        FpMat stacked(F, 0, M->vdim(v));
        for (size_t k = 0; k < A.generators.size(); ++k) {
            const BasisElem& g = A.basis[A.generators[k]];
            if (g.src == v) stacked = FpMat::vstack(stacked, M->gen_action(k));
        }
        socspan.push_back(stacked.kernel_basis());
    }
    std::tie(L.socle, L.socle_inclusion) = module_on_subspace(M, socspan);
    // radical series dims.
    L.radical_series.push_back(M->dim());
    ModulePtr cur = L.rad;
    while (true) {
        L.radical_series.push_back(cur->dim());
        if (cur->dim() == 0) break;
        if (L.radical_series.size() > A.loewy_length + 1)
            throw InvariantError("layers: radical series does not terminate within the Loewy length");
        cur = radical_submodule(cur).first;
    }
    return L;
}

std::vector<size_t> socle_series_dims(ModulePtr M) {
    std::vector<size_t> out{0};
    ModulePtr cur = M;
    std::vector<size_t> quotients;
    // soc series via iterated quotients by the socle.
    size_t killed = 0;
    while (cur->dim() > 0) {
        Layers L = layers(cur);
        if (L.socle->dim() == 0) throw InvariantError("socle_series: zero socle on a nonzero module");
        killed += L.socle->dim();
        out.push_back(killed);
        auto [Q, proj] = quotient_module(cur, L.socle_inclusion);
        cur = Q;
    }
    return out;
}

size_t loewy_length(ModulePtr M) {
    if (M->dim() == 0) return 0;
    return layers(M).radical_series.size() - 1;
}

DirectSum direct_sum(AlgebraPtr A, const std::vector<ModulePtr>& parts) {
    Fp F = A->field;
    const size_t nv = A->num_vertices();
    std::vector<uint32_t> vdim(nv, 0);
    for (const auto& P : parts)
        for (size_t v = 0; v < nv; ++v) vdim[v] += P->vdim(v);
    std::vector<FpMat> mats;
    for (size_t k = 0; k < A->generators.size(); ++k) {
        const BasisElem& g = A->basis[A->generators[k]];
        FpMat m(F, vdim[g.tgt], vdim[g.src]);
        size_t ro = 0, co = 0;
        for (const auto& P : parts) {
            const FpMat& block = P->gen_action(k);
            for (size_t i = 0; i < block.rows(); ++i)
                for (size_t j = 0; j < block.cols(); ++j) m.at(ro + i, co + j) = block.at(i, j);
            ro += P->vdim(g.tgt);
            co += P->vdim(g.src);
        }
        mats.push_back(std::move(m));
    }
    DirectSum ds;
    ds.total = mk_module(ModuleRep(A, vdim, std::move(mats)));
    std::vector<size_t> off(nv, 0);
    for (const auto& P : parts) {
        ModuleMap inj{P, ds.total, {}};
        ModuleMap proj{ds.total, P, {}};
        for (size_t v = 0; v < nv; ++v) {
            FpMat in(F, vdim[v], P->vdim(v));
            FpMat pr(F, P->vdim(v), vdim[v]);
            for (size_t i = 0; i < P->vdim(v); ++i) {
                in.at(off[v] + i, i) = 1;
                pr.at(i, off[v] + i) = 1;
            }
            inj.comp.push_back(std::move(in));
            proj.comp.push_back(std::move(pr));
        }
        ds.injections.push_back(std::move(inj));
        ds.projections.push_back(std::move(proj));
        for (size_t v = 0; v < nv; ++v) off[v] += P->vdim(v);
    }
    return ds;
}

ModulePtr conjugated_copy(ModulePtr M, Rng& rng) {
    const BasedAlgebra& A = M->algebra();
    Fp F = M->field();
    std::vector<FpMat> T, Tinv;
    for (size_t v = 0; v < A.num_vertices(); ++v) {
        FpMat t = M->vdim(v) ? random_invertible(F, M->vdim(v), rng) : FpMat(F, 0, 0);
        Tinv.push_back(M->vdim(v) ? *t.inverse() : FpMat(F, 0, 0));
        T.push_back(std::move(t));
    }
    std::vector<FpMat> mats;
    for (size_t k = 0; k < A.generators.size(); ++k) {
        const BasisElem& g = A.basis[A.generators[k]];
        mats.push_back(T[g.tgt] * M->gen_action(k) * Tinv[g.src]);
    }
    return mk_module(ModuleRep(M->algebra_ptr(), M->dim_vector(), std::move(mats)));
}

ModulePtr random_module(AlgebraPtr A, Rng& rng, size_t max_proj_summands, size_t max_cuts) {
    std::vector<ModulePtr> parts;
    size_t n = 1 + rng.below(static_cast<uint32_t>(max_proj_summands));
    for (size_t i = 0; i < n; ++i)
        parts.push_back(standard_module(A, StandardKind::projective, rng.below(static_cast<uint32_t>(A->num_vertices()))));
    ModulePtr P = direct_sum(A, parts).total;
    // Random submodule: close random vectors under the action, then quotient.
    Fp F = A->field;
    std::vector<FpMat> seed;
    for (size_t v = 0; v < A->num_vertices(); ++v) seed.push_back(FpMat(F, P->vdim(v), 0));
    size_t cuts = rng.below(static_cast<uint32_t>(max_cuts + 1));
    for (size_t c = 0; c < cuts; ++c) {
        VertexId v = rng.below(static_cast<uint32_t>(A->num_vertices()));
        if (P->vdim(v) == 0) continue;
        FpMat vec = random_matrix(F, P->vdim(v), 1, rng);
        seed[v] = FpMat::hstack(seed[v], vec);
    }
    auto [sub, incl] = submodule_closure(P, seed);
    if (sub->dim() == P->dim()) return P; // quotient would be zero; keep P
    auto [Q, proj] = quotient_module(P, incl);
    return Q;
}

MapSpaces map_spaces(const ModuleMap& f) {
    MapSpaces out;
    const BasedAlgebra& A = f.dom->algebra();
    // Kernel: per-vertex kernels are action-stable because f intertwines.
    std::vector<FpMat> kercols;
    for (size_t v = 0; v < A.num_vertices(); ++v) kercols.push_back(f.comp[v].kernel_basis());
    std::tie(out.kernel, out.kernel_inclusion) = module_on_subspace(f.dom, kercols);
    // Image.
    std::vector<FpMat> imcols;
    for (size_t v = 0; v < A.num_vertices(); ++v) imcols.push_back(f.comp[v].col_space_basis());
    std::tie(out.image, out.image_inclusion) = module_on_subspace(f.cod, imcols);
    // Factor f through its image.
    out.onto_image = ModuleMap{f.dom, out.image, {}};
    for (size_t v = 0; v < A.num_vertices(); ++v)
        out.onto_image.comp.push_back(imcols[v].cols() ? subspace::coordinates(imcols[v], f.comp[v])
                                                       : FpMat(f.dom->field(), 0, f.dom->vdim(v)));
    std::tie(out.cokernel, out.cokernel_projection) = quotient_module(f.cod, out.image_inclusion);
    return out;
}

bool ModuleFingerprint::operator<(const ModuleFingerprint& o) const {
    if (dim_vector != o.dim_vector) return dim_vector < o.dim_vector;
    if (radical_series != o.radical_series) return radical_series < o.radical_series;
    if (socle_series != o.socle_series) return socle_series < o.socle_series;
    return end_dim < o.end_dim;
}

ModuleFingerprint module_fingerprint(ModulePtr M) {
    ModuleFingerprint fp;
    fp.dim_vector = M->dim_vector();
    fp.end_dim = hom_dim(*M, *M);
    fp.radical_series = M->dim() ? layers(M).radical_series : std::vector<size_t>{0};
    fp.socle_series = socle_series_dims(M);
    return fp;
}

} // namespace qhom
