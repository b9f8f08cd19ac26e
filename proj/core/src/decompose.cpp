#include "qhom/decompose.hpp"

#include <algorithm>
#include <cassert>

#include "qhom/error.hpp"
#include "qhom/polyfp.hpp"

namespace qhom {

namespace {

FpMat total_matrix(const ModuleMap& f) { return f.total(); }

// Minimal polynomial of T as lcm of local minimal polynomials of a few
// random vectors; exactness of the split is verified downstream, so a
// probabilistically short answer here is safe.
PolyFp min_poly(const FpMat& T, Rng& rng) {
    Fp F = T.field();
    size_t d = T.rows();
    if (d == 0) return PolyFp::constant(F, 1);
    PolyFp m = PolyFp::constant(F, 1);
    for (int probe = 0; probe < 3; ++probe) {
        FpMat v = random_matrix(F, d, 1, rng);
        // Krylov: find the first dependence among v, Tv, T^2 v, ...
        FpMat krylov(F, d, 0);
        FpMat cur = v;
        while (true) {
            if (krylov.cols() && subspace::contains(krylov, cur)) break;
            krylov = FpMat::hstack(krylov, cur);
            cur = T * cur;
            if (krylov.cols() > d) throw InvariantError("min_poly: Krylov runaway");
        }
        FpMat coords = subspace::coordinates(krylov, cur);
        std::vector<uint32_t> cs(krylov.cols() + 1, 0);
        for (size_t i = 0; i < krylov.cols(); ++i) cs[i] = F.neg(coords.at(i, 0));
        cs[krylov.cols()] = 1;
        PolyFp local(F, std::move(cs));
        // lcm(m, local)
        PolyFp g = PolyFp::gcd(m, local);
        m = (m * local).divmod(g).first.monic();
        if (m.degree() >= static_cast<int>(d)) break;
    }
    return m;
}

struct Embedded {
    ModulePtr X;
    ModuleMap emb; // X -> M
};

// One nontrivial split X = U + W along a spectral projector, or nothing.
std::optional<std::pair<ModuleMap, ModuleMap>> try_split(ModulePtr X, const std::vector<ModuleMap>& endo, Rng& rng,
                                                         size_t trials) {
    if (endo.size() <= 1) return std::nullopt;
    Fp F = X->field();
    for (size_t t = 0; t < trials; ++t) {
        ModuleMap theta = ModuleMap::zero(X, X);
        for (const auto& e : endo) theta = theta + e.scaled(rng.field_elem(F));
        FpMat T = total_matrix(theta);
        PolyFp m = min_poly(T, rng);
        Rng frng(rng.fork());
        auto factors = factor_poly(m, frng);
        if (factors.size() < 2) continue;
        // Fitting split along the primary component of the first factor.
        FpMat g = FpMat::identity(F, T.rows());
        {
            // g = f1(T)^m1 via Horner then powering
            const PolyFp& f1 = factors[0].first;
            FpMat acc(F, T.rows(), T.rows());
            for (int k = f1.degree(); k >= 0; --k) {
                acc = acc * T;
                if (uint32_t c = f1.coeff(k)) acc.add_in_place(FpMat::identity(F, T.rows()), c);
            }
            g = FpMat::identity(F, T.rows());
            for (int k = 0; k < factors[0].second; ++k) g = g * acc;
        }
        FpMat U = g.kernel_basis();     // f1-primary component
        FpMat W = g.col_space_basis();  // complementary component
        if (U.cols() == 0 || W.cols() == 0) continue;
        if (U.cols() + W.cols() != X->dim()) continue; // not a clean Fitting split
        // Slice the global vectors into per-vertex columns.
        auto slice = [&](const FpMat& cols) {
            std::vector<FpMat> per;
            for (size_t v = 0; v < X->algebra().num_vertices(); ++v) {
                FpMat block(F, X->vdim(v), cols.cols());
                for (size_t i = 0; i < X->vdim(v); ++i)
                    for (size_t j = 0; j < cols.cols(); ++j) block.at(i, j) = cols.at(X->offset(v) + i, j);
                per.push_back(subspace::column_reduce(block));
            }
            return per;
        };
        auto [subU, inclU] = submodule_closure(X, slice(U));
        auto [subW, inclW] = submodule_closure(X, slice(W));
        if (subU->dim() == 0 || subW->dim() == 0) continue;
        if (subU->dim() + subW->dim() != X->dim()) continue;
        // Assemble the idempotent projecting onto U along W and make it exact
        // (Newton step e <- 3e^2 - 2e^3 corrects any residual error).
        ModuleMap e{X, X, {}};
        bool good = true;
        for (size_t v = 0; v < X->algebra().num_vertices() && good; ++v) {
            FpMat T2 = FpMat::hstack(inclU.comp[v], inclW.comp[v]);
            auto Tinv = T2.cols() ? T2.inverse() : std::optional<FpMat>(FpMat(F, 0, 0));
            if (!Tinv) {
                good = false;
                break;
            }
            FpMat sel(F, T2.cols(), T2.cols());
            for (size_t i = 0; i < inclU.comp[v].cols(); ++i) sel.at(i, i) = 1;
            e.comp.push_back(T2 * sel * *Tinv);
        }
        if (!good) continue;
        for (int it = 0; it < 6; ++it) {
            ModuleMap e2 = e.then(e);
            bool exact = true;
            for (size_t v = 0; v < e.comp.size(); ++v) exact = exact && e2.comp[v] == e.comp[v];
            if (exact) break;
            // 3e^2 - 2e^3
            ModuleMap e3 = e2.then(e);
            e = e2.scaled(3) + e3.scaled(F.p - 2);
        }
        e.validate();
        return std::make_pair(inclU, inclW);
    }
    return std::nullopt;
}

// Certify End(X) local through the trace form: rad = ker(trace form) when the
// latter is a nilpotent ideal; then local iff the quotient is 1-dimensional.
bool certify_local(ModulePtr X, const std::vector<ModuleMap>& endo) {
    Fp F = X->field();
    size_t r = endo.size();
    if (r == 0) return false;
    if (r == 1) return true;
    std::vector<FpMat> mats;
    for (const auto& e : endo) mats.push_back(total_matrix(e));
    auto tr = [&](const FpMat& m) {
        uint32_t s = 0;
        for (size_t i = 0; i < m.rows(); ++i) s = F.add(s, m.at(i, i));
        return s;
    };
    FpMat gram(F, r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) gram.at(i, j) = tr(mats[i] * mats[j]);
    FpMat K = gram.kernel_basis(); // coordinates of the candidate radical
    if (r - K.cols() != 1) return false;
    size_t d = X->dim();
    auto expand = [&](size_t col) {
        FpMat m(F, d, d);
        for (size_t i = 0; i < r; ++i)
            if (uint32_t c = K.at(i, col)) m.add_in_place(mats[i], c);
        return m;
    };
    std::vector<FpMat> kbasis;
    for (size_t c = 0; c < K.cols(); ++c) kbasis.push_back(expand(c));
    // Flatten the span of K and verify it is an ideal of End(X).
    auto flatten = [&](const FpMat& m) {
        FpMat v(F, d * d, 1);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) v.at(i * d + j, 0) = m.at(i, j);
        return v;
    };
    FpMat kspan(F, d * d, 0);
    for (const auto& m : kbasis) kspan = FpMat::hstack(kspan, flatten(m));
    kspan = subspace::column_reduce(kspan);
    for (const auto& e : mats)
        for (const auto& k : kbasis) {
            if (!subspace::contains(kspan, flatten(e * k))) return false;
            if (!subspace::contains(kspan, flatten(k * e))) return false;
        }
    // Nilpotency of the ideal: powers of the span eventually vanish.
    std::vector<FpMat> layer = kbasis;
    for (size_t iter = 0; iter <= d && !layer.empty(); ++iter) {
        std::vector<FpMat> next;
        FpMat span(F, d * d, 0);
        for (const auto& a : layer)
            for (const auto& k : kbasis) {
                FpMat prod = a * k;
                if (prod.is_zero()) continue;
                FpMat fl = flatten(prod);
                if (span.cols() && subspace::contains(span, fl)) continue;
                span = FpMat::hstack(span, fl);
                next.push_back(prod);
            }
        if (next.empty()) return true;
        if (iter == d) return false;
        layer = std::move(next);
    }
    return layer.empty();
}

} // namespace

ModuleMap invert_iso(const ModuleMap& f) {
    ModuleMap inv{f.cod, f.dom, {}};
    for (const auto& block : f.comp) {
        auto b = block.inverse();
        if (!b) throw InvariantError("invert_iso: map is not an isomorphism");
        inv.comp.push_back(std::move(*b));
    }
    return inv;
}

std::optional<ModuleMap> indec_isomorphic(ModulePtr X, ModulePtr Y, Rng& rng, size_t trials) {
    if (X->dim_vector() != Y->dim_vector()) return std::nullopt;
    if (X->dim() == 0) return ModuleMap::zero(X, Y);
    auto H = hom_basis(X, Y);
    if (H.empty()) return std::nullopt;
    Fp F = X->field();
    for (size_t t = 0; t < trials; ++t) {
        ModuleMap f = ModuleMap::zero(X, Y);
        if (t < H.size())
            f = H[t];
        else
            for (const auto& h : H) f = f + h.scaled(rng.field_elem(F));
        if (f.is_isomorphism()) return f;
    }
    return std::nullopt;
}

Decomposition decompose(ModulePtr M, uint64_t seed, size_t trial_budget) {
    Rng rng(seed);
    AlgebraPtr A = M->algebra_ptr();
    Decomposition out;
    if (M->dim() == 0) {
        out.sum = M;
        out.witness = ModuleMap::identity(M);
        return out;
    }
    struct Piece {
        ModulePtr X;
        ModuleMap emb;
        bool local;
    };
    std::vector<Piece> indec;
    std::vector<Embedded> work{{M, ModuleMap::identity(M)}};
    size_t safety = 0;
    while (!work.empty()) {
        if (++safety > 4 * M->dim() + 16)
            throw ResourceError("decompose: splitting iteration budget exhausted");
        Embedded cur = std::move(work.back());
        work.pop_back();
        auto endo = hom_basis(cur.X, cur.X);
        auto split = try_split(cur.X, endo, rng, trial_budget);
        if (!split) {
            bool local = certify_local(cur.X, endo);
            indec.push_back({cur.X, cur.emb, local});
            continue;
        }
        work.push_back({split->first.dom, split->first.then(cur.emb)});
        work.push_back({split->second.dom, split->second.then(cur.emb)});
    }
    // Group the pieces into isomorphism classes.
    struct Class {
        ModulePtr rep;
        ModuleFingerprint fp;
        bool local;
        std::vector<std::pair<ModuleMap, ModuleMap>> members; // (emb into M, iso rep -> member)
    };
    std::vector<Class> classes;
    for (auto& p : indec) {
        bool placed = false;
        ModuleFingerprint fp = module_fingerprint(p.X);
        for (auto& cl : classes) {
            if (!(cl.fp == fp)) continue;
            Rng r2(rng.fork());
            if (auto iso = indec_isomorphic(cl.rep, p.X, r2)) {
                cl.members.emplace_back(p.emb, *iso);
                cl.local = cl.local && p.local;
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({p.X, fp, p.local, {{p.emb, ModuleMap::identity(p.X)}}});
    }
    std::sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) { return a.fp < b.fp; });
    // Assemble the direct sum and the witness.
    std::vector<ModulePtr> slots;
    for (const auto& cl : classes)
        for (size_t m = 0; m < cl.members.size(); ++m) slots.push_back(cl.rep);
    DirectSum ds = direct_sum(A, slots);
    ModuleMap witness = ModuleMap::zero(ds.total, M);
    size_t slot = 0;
    for (const auto& cl : classes)
        for (const auto& [emb, iso] : cl.members) {
            // sum --proj--> rep --iso--> member --emb--> M
            ModuleMap leg = ds.projections[slot].then(iso).then(emb);
            witness = witness + leg;
            ++slot;
        }
    if (!witness.is_isomorphism()) throw InvariantError("decompose: assembled witness is not an isomorphism");
    for (const auto& cl : classes) out.pieces.push_back({cl.rep, cl.members.size(), cl.local});
    out.sum = ds.total;
    out.witness = std::move(witness);
    return out;
}

std::pair<bool, std::optional<ModuleMap>> modules_isomorphic(ModulePtr M, ModulePtr N, uint64_t seed) {
    if (M->dim_vector() != N->dim_vector()) return {false, std::nullopt};
    if (M->dim() == 0) return {true, ModuleMap::zero(M, N)};
    Decomposition dm = decompose(M, seed);
    Decomposition dn = decompose(N, seed + 1);
    if (dm.pieces.size() != dn.pieces.size()) return {false, std::nullopt};
    Rng rng(seed + 2);
    // Match classes one-to-one.
    std::vector<bool> used(dn.pieces.size(), false);
    std::vector<std::pair<size_t, ModuleMap>> match; // for M-piece i: (N-piece j, iso)
    for (size_t i = 0; i < dm.pieces.size(); ++i) {
        bool ok = false;
        for (size_t j = 0; j < dn.pieces.size(); ++j) {
            if (used[j] || dn.pieces[j].multiplicity != dm.pieces[i].multiplicity) continue;
            if (auto iso = indec_isomorphic(dm.pieces[i].module, dn.pieces[j].module, rng)) {
                used[j] = true;
                match.emplace_back(j, *iso);
                ok = true;
                break;
            }
        }
        if (!ok) return {false, std::nullopt};
    }
    // Witness: N_sum and M_sum have the same slot layout after permuting
    // classes; build M -> N as  M --inv(wM)--> sumM --piecewise--> sumN --wN--> N.
    // Assemble piecewise map sumM -> sumN.
    AlgebraPtr A = M->algebra_ptr();
    std::vector<ModulePtr> mslots, nslots;
    for (const auto& p : dm.pieces)
        for (size_t k = 0; k < p.multiplicity; ++k) mslots.push_back(p.module);
    for (const auto& p : dn.pieces)
        for (size_t k = 0; k < p.multiplicity; ++k) nslots.push_back(p.module);
    DirectSum dsm = direct_sum(A, mslots);
    DirectSum dsn = direct_sum(A, nslots);
    std::vector<size_t> nslot_offset(dn.pieces.size(), 0);
    {
        size_t off = 0;
        for (size_t j = 0; j < dn.pieces.size(); ++j) {
            nslot_offset[j] = off;
            off += dn.pieces[j].multiplicity;
        }
    }
    ModuleMap cross = ModuleMap::zero(dsm.total, dsn.total);
    size_t mslot = 0;
    for (size_t i = 0; i < dm.pieces.size(); ++i) {
        size_t j = match[i].first;
        for (size_t k = 0; k < dm.pieces[i].multiplicity; ++k) {
            ModuleMap leg = dsm.projections[mslot].then(match[i].second).then(dsn.injections[nslot_offset[j] + k]);
            cross = cross + leg;
            ++mslot;
        }
    }
    ModuleMap full = invert_iso(dm.witness).then(cross).then(dn.witness);
    if (!full.is_isomorphism()) throw InvariantError("modules_isomorphic: assembled witness is not an isomorphism");
    return {true, full};
}

bool in_add_closure(ModulePtr X, const std::vector<ModulePtr>& summands, uint64_t seed) {
    if (X->dim() == 0) return true;
    Decomposition dx = decompose(X, seed);
    // Decompose the allowed summands into indecomposables once.
    std::vector<ModulePtr> allowed;
    for (const auto& U : summands) {
        if (U->dim() == 0) continue;
        Decomposition du = decompose(U, seed + 7);
        for (const auto& p : du.pieces) allowed.push_back(p.module);
    }
    Rng rng(seed + 11);
    for (const auto& p : dx.pieces) {
        bool ok = false;
        for (const auto& U : allowed)
            if (indec_isomorphic(p.module, U, rng)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

} // namespace qhom
