#include "qhom/constructions.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <functional>
#include <numeric>
#include <set>

#include "qhom/error.hpp"
#include "qhom/module.hpp"

namespace qhom {

AlgebraPtr opposite(AlgebraPtr A) {
    std::vector<BasisElem> basis = A->basis;
    for (auto& b : basis) std::swap(b.src, b.tgt);
    const size_t n = basis.size();
    std::vector<std::vector<SparseElem>> table(n, std::vector<SparseElem>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) table[i][j] = A->table[j][i];
    std::string name = A->name.size() >= 3 && A->name.substr(A->name.size() - 3) == "^op"
                           ? A->name.substr(0, A->name.size() - 3)
                           : A->name + "^op";
    return algebra_from_table(A->field, name, A->vertex_names, std::move(basis), std::move(table));
}

DualityContext::DualityContext(AlgebraPtr A) : A_(std::move(A)), Aop_(qhom::opposite(A_)) {}
DualityContext::DualityContext(AlgebraPtr A, AlgebraPtr Aop) : A_(std::move(A)), Aop_(std::move(Aop)) {}

namespace {

ModulePtr dualize(ModulePtr M, AlgebraPtr target) {
    const BasedAlgebra& S = M->algebra();
    // Same generator set in the same order; actions transpose.
    std::vector<FpMat> mats;
    for (size_t k = 0; k < S.generators.size(); ++k) mats.push_back(M->gen_action(k).transposed());
    return mk_module(ModuleRep(target, M->dim_vector(), std::move(mats)));
}

} // namespace

ModulePtr DualityContext::to_op(ModulePtr M) const {
    if (M->algebra_ptr().get() != A_.get()) throw InvariantError("DualityContext::to_op: module not over A");
    return dualize(M, Aop_);
}

ModulePtr DualityContext::to_A(ModulePtr N) const {
    if (N->algebra_ptr().get() != Aop_.get()) throw InvariantError("DualityContext::to_A: module not over A^op");
    return dualize(N, A_);
}

void Bimodule::validate() const {
    Fp F = left->field;
    if (left_action.size() != left->dim() || right_action.size() != right->dim())
        throw InvariantError("bimodule: one action matrix per algebra basis element required");
    FpMat lsum(F, dim, dim), rsum(F, dim, dim);
    for (VertexId v = 0; v < left->num_vertices(); ++v) lsum.add_in_place(left_action[v]);
    for (VertexId w = 0; w < right->num_vertices(); ++w) rsum.add_in_place(right_action[w]);
    if (!(lsum == FpMat::identity(F, dim)) || !(rsum == FpMat::identity(F, dim)))
        throw InvariantError("bimodule: idempotents do not act as a decomposition of the identity");
    auto expand_left = [&](const SparseElem& x) {
        FpMat m(F, dim, dim);
        for (auto [i, c] : x) m.add_in_place(left_action[i], c);
        return m;
    };
    auto expand_right = [&](const SparseElem& x) {
        FpMat m(F, dim, dim);
        for (auto [i, c] : x) m.add_in_place(right_action[i], c);
        return m;
    };
    for (size_t i = 0; i < left->dim(); ++i)
        for (size_t j = 0; j < left->dim(); ++j) {
            FpMat lhs = left->composable(static_cast<uint32_t>(i), static_cast<uint32_t>(j))
                            ? expand_left(left->table[i][j])
                            : FpMat(F, dim, dim);
            if (!(left_action[i] * left_action[j] == lhs))
                throw InvariantError("bimodule: left action not multiplicative");
        }
    for (size_t i = 0; i < right->dim(); ++i)
        for (size_t j = 0; j < right->dim(); ++j) {
            FpMat rhs = right->composable(static_cast<uint32_t>(i), static_cast<uint32_t>(j))
                            ? expand_right(right->table[i][j])
                            : FpMat(F, dim, dim);
            // Right action reverses: m.(xy) = (m.x).y
            if (!(right_action[j] * right_action[i] == rhs))
                throw InvariantError("bimodule: right action not anti-multiplicative");
        }
    for (size_t i = 0; i < left->dim(); ++i)
        for (size_t j = 0; j < right->dim(); ++j)
            if (!(left_action[i] * right_action[j] == right_action[j] * left_action[i]))
                throw InvariantError("bimodule: left and right actions do not commute");
}

AlgebraPtr scalar_algebra(Fp F, const std::string& vertex_name) {
    std::vector<BasisElem> basis{{0, 0, 0, "e_" + vertex_name}};
    std::vector<std::vector<SparseElem>> table{{SparseElem{{0, 1u}}}};
    return algebra_from_table(F, "k", {vertex_name}, std::move(basis), std::move(table));
}

namespace {

FpMat global_action(const ModuleRep& M, uint32_t b) {
    const BasedAlgebra& A = M.algebra();
    Fp F = M.field();
    FpMat m(F, M.dim(), M.dim());
    const BasisElem& be = A.basis[b];
    const FpMat& blk = M.act(b);
    for (size_t i = 0; i < blk.rows(); ++i)
        for (size_t j = 0; j < blk.cols(); ++j) m.at(M.offset(be.tgt) + i, M.offset(be.src) + j) = blk.at(i, j);
    return m;
}

} // namespace

Bimodule bimodule_from_left_module(ModulePtr M, AlgebraPtr k_algebra) {
    Bimodule bm;
    bm.left = M->algebra_ptr();
    bm.right = k_algebra;
    bm.dim = M->dim();
    for (uint32_t b = 0; b < bm.left->dim(); ++b) bm.left_action.push_back(global_action(*M, b));
    bm.right_action.push_back(FpMat::identity(M->field(), bm.dim));
    bm.validate();
    return bm;
}

Bimodule bimodule_from_dual(AlgebraPtr k_algebra, ModulePtr M) {
    Bimodule bm;
    bm.left = k_algebra;
    bm.right = M->algebra_ptr();
    bm.dim = M->dim();
    bm.left_action.push_back(FpMat::identity(M->field(), bm.dim));
    for (uint32_t b = 0; b < bm.right->dim(); ++b) bm.right_action.push_back(global_action(*M, b).transposed());
    bm.validate();
    return bm;
}

AlgebraPtr triangular_matrix(AlgebraPtr B, AlgebraPtr C, const Bimodule& M, const std::string& name) {
    if (M.left.get() != B.get() || M.right.get() != C.get())
        throw InvariantError("triangular_matrix: bimodule actions do not match the given algebras");
    M.validate();
    Fp F = B->field;
    if (!(C->field == F)) throw InvariantError("triangular_matrix: mixed characteristics");
    const size_t nvB = B->num_vertices(), nvC = C->num_vertices();
    const size_t nv = nvB + nvC;

    std::vector<std::string> vnames = B->vertex_names;
    for (const auto& w : C->vertex_names) {
        std::string cand = w;
        while (std::find(vnames.begin(), vnames.end(), cand) != vnames.end()) cand += "'";
        vnames.push_back(cand);
    }

    // Peirce projections and the radical filtration of M; pick an adapted
    // basis, recorded as columns of U with bookkeeping (tgt in B, src in C, deg).
    FpMat U(F, M.dim, 0);
    struct MInfo {
        VertexId tgt_b, src_c;
        uint32_t deg;
    };
    std::vector<MInfo> minfo;
    {
        // Filtration F^k = sum over (b, c) with deg_B(b) + deg_C(c) >= k-1 of
        // the image of L_b R_c; F^1 = M.
        uint32_t maxk = B->loewy_length + C->loewy_length;
        for (VertexId u = 0; u < nvB; ++u)
            for (VertexId w = 0; w < nvC; ++w) {
                FpMat proj = M.left_action[u] * M.right_action[w];
                FpMat block = proj.col_space_basis(); // Peirce block e_u M e_w
                if (block.cols() == 0) continue;
                // Filtration inside the block, computed from the global one.
                std::vector<FpMat> filt(maxk + 1, FpMat(F, M.dim, 0));
                filt[1] = block;
                for (uint32_t k = 2; k <= maxk; ++k) {
                    FpMat span(F, M.dim, 0);
                    for (uint32_t bb = 0; bb < B->dim(); ++bb)
                        for (uint32_t cc = 0; cc < C->dim(); ++cc) {
                            if (B->basis[bb].deg + C->basis[cc].deg < k - 1) continue;
                            if (B->basis[bb].tgt != u || C->basis[cc].src != w) continue;
                            FpMat img = (M.left_action[bb] * M.right_action[cc] * block).col_space_basis();
                            if (img.cols()) span = subspace::sum(span, img);
                        }
                    filt[k] = span;
                }
                // Extend a basis of filt[k+1] to filt[k], top degree first.
                FpMat chosen(F, M.dim, 0);
                for (uint32_t k = maxk; k >= 1; --k) {
                    const FpMat& level = filt[k];
                    for (size_t c = 0; c < level.cols(); ++c) {
                        FpMat v = level.sub_block(0, c, M.dim, 1);
                        if (!subspace::contains(chosen, v)) {
                            chosen = FpMat::hstack(chosen, v);
                            U = FpMat::hstack(U, v);
                            minfo.push_back({u, w, k});
                        }
                    }
                    if (k == 1) break;
                }
            }
    }
    if (U.cols() != M.dim) throw InvariantError("triangular_matrix: Peirce decomposition of the bimodule failed");
    FpMat Uinv = M.dim ? *U.inverse() : FpMat(F, 0, 0);

    // Basis layout: e_v of B, e_w of C, positive-degree B, M, positive-degree C.
    std::vector<BasisElem> basis;
    std::vector<uint32_t> bmapB(B->dim()), bmapC(C->dim()), bmapM(M.dim);
    for (VertexId v = 0; v < nvB; ++v) basis.push_back({v, v, 0, B->basis[v].label});
    for (VertexId w = 0; w < nvC; ++w)
        basis.push_back({static_cast<VertexId>(nvB + w), static_cast<VertexId>(nvB + w), 0, C->basis[w].label + "'"});
    for (VertexId v = 0; v < nvB; ++v) bmapB[v] = v;
    for (VertexId w = 0; w < nvC; ++w) bmapC[w] = static_cast<uint32_t>(nvB + w);
    for (uint32_t b = static_cast<uint32_t>(nvB); b < B->dim(); ++b) {
        bmapB[b] = static_cast<uint32_t>(basis.size());
        basis.push_back(B->basis[b]);
    }
    for (uint32_t m = 0; m < M.dim; ++m) {
        bmapM[m] = static_cast<uint32_t>(basis.size());
        basis.push_back({static_cast<VertexId>(nvB + minfo[m].src_c), minfo[m].tgt_b, minfo[m].deg,
                         "m" + std::to_string(m)});
    }
    for (uint32_t c = static_cast<uint32_t>(nvC); c < C->dim(); ++c) {
        bmapC[c] = static_cast<uint32_t>(basis.size());
        BasisElem be = C->basis[c];
        be.src += static_cast<VertexId>(nvB);
        be.tgt += static_cast<VertexId>(nvB);
        be.label += "'";
        basis.push_back(be);
    }

    const size_t n = basis.size();
    std::vector<std::vector<SparseElem>> table(n, std::vector<SparseElem>(n));
    auto remapB = [&](const SparseElem& x) {
        SparseElem r;
        for (auto [i, c] : x) r.emplace_back(bmapB[i], c);
        std::sort(r.begin(), r.end());
        return r;
    };
    auto remapC = [&](const SparseElem& x) {
        SparseElem r;
        for (auto [i, c] : x) r.emplace_back(bmapC[i], c);
        std::sort(r.begin(), r.end());
        return r;
    };
    // Expand an M-vector (original coordinates) in the adapted basis.
    auto mvec_to_sparse = [&](const FpMat& vec) {
        SparseElem r;
        for (size_t m = 0; m < M.dim; ++m) {
            uint32_t acc = 0;
            for (size_t i = 0; i < M.dim; ++i) acc = F.add(acc, F.mul(Uinv.at(m, i), vec.at(i, 0)));
            if (acc) r.emplace_back(bmapM[m], acc);
        }
        std::sort(r.begin(), r.end());
        return r;
    };
    for (uint32_t i = 0; i < B->dim(); ++i)
        for (uint32_t j = 0; j < B->dim(); ++j) table[bmapB[i]][bmapB[j]] = remapB(B->table[i][j]);
    for (uint32_t i = 0; i < C->dim(); ++i)
        for (uint32_t j = 0; j < C->dim(); ++j) table[bmapC[i]][bmapC[j]] = remapC(C->table[i][j]);
    for (uint32_t b = 0; b < B->dim(); ++b)
        for (uint32_t m = 0; m < M.dim; ++m) {
            // b . m  (needs src_B(b) == tgt(m))
            if (B->basis[b].src != minfo[m].tgt_b) continue;
            FpMat vec = M.left_action[b] * U.sub_block(0, m, M.dim, 1);
            table[bmapB[b]][bmapM[m]] = mvec_to_sparse(vec);
        }
    for (uint32_t m = 0; m < M.dim; ++m)
        for (uint32_t c = 0; c < C->dim(); ++c) {
            // m . c  (needs src(m) == tgt_C(c))
            if (minfo[m].src_c != C->basis[c].tgt) continue;
            FpMat vec = M.right_action[c] * U.sub_block(0, m, M.dim, 1);
            table[bmapM[m]][bmapC[c]] = mvec_to_sparse(vec);
        }

    std::string tname = name.empty() ? "tri(" + B->name + "," + C->name + ")" : name;
    return algebra_from_table(F, tname, std::move(vnames), std::move(basis), std::move(table));
}

OnePointResult one_point(AlgebraPtr B, ModulePtr M, OnePointSide side, const std::string& name) {
    if (M->algebra_ptr().get() != B.get()) throw InvariantError("one_point: module not over the given algebra");
    Fp F = B->field;
    std::string wname = "w";
    while (std::find(B->vertex_names.begin(), B->vertex_names.end(), wname) != B->vertex_names.end()) wname += "'";
    AlgebraPtr k = scalar_algebra(F, wname);
    if (side == OnePointSide::extension) {
        Bimodule bm = bimodule_from_left_module(M, k);
        std::string tname = name.empty() ? "opext(" + B->name + ")" : name;
        AlgebraPtr A = triangular_matrix(B, k, bm, tname);
        return {A, static_cast<VertexId>(B->num_vertices())};
    }
    Bimodule bm = bimodule_from_dual(k, M);
    std::string tname = name.empty() ? "opcoext(" + B->name + ")" : name;
    AlgebraPtr A = triangular_matrix(k, B, bm, tname);
    return {A, 0};
}

namespace {

using Color = std::vector<long>;

std::vector<std::vector<size_t>> apply_perm(const std::vector<std::vector<size_t>>& cartan,
                                            const std::vector<size_t>& perm) {
    size_t n = cartan.size();
    std::vector<std::vector<size_t>> out(n, std::vector<size_t>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = cartan[perm[i]][perm[j]];
    return out;
}

} // namespace

Fingerprint fingerprint(AlgebraPtr A) {
    Fingerprint fp;
    fp.total_dim = A->dim();
    fp.num_simples = A->num_vertices();
    fp.loewy = A->loewy_length;
    fp.radical_layers = A->radical_layer_dims();
    const size_t nv = A->num_vertices();
    std::vector<std::vector<size_t>> cartan(nv, std::vector<size_t>(nv, 0));
    for (const auto& b : A->basis) ++cartan[b.tgt][b.src];

    // Degree-resolved row/column profiles as initial colors.
    std::vector<Color> color(nv);
    for (VertexId v = 0; v < nv; ++v) {
        std::vector<long> outdeg(A->loewy_length, 0), indeg(A->loewy_length, 0);
        for (const auto& b : A->basis) {
            if (b.src == v) ++outdeg[b.deg];
            if (b.tgt == v) ++indeg[b.deg];
        }
        Color c;
        c.insert(c.end(), outdeg.begin(), outdeg.end());
        c.insert(c.end(), indeg.begin(), indeg.end());
        c.push_back(static_cast<long>(cartan[v][v]));
        color[v] = c;
    }
    // Weisfeiler-Leman style refinement over the Cartan matrix.
    for (size_t round = 0; round < nv; ++round) {
        std::vector<Color> next(nv);
        for (VertexId v = 0; v < nv; ++v) {
            std::vector<Color> nbrs;
            for (VertexId u = 0; u < nv; ++u) {
                Color e = color[u];
                e.push_back(static_cast<long>(cartan[u][v]));
                e.push_back(static_cast<long>(cartan[v][u]));
                nbrs.push_back(std::move(e));
            }
            std::sort(nbrs.begin(), nbrs.end());
            Color c = color[v];
            for (auto& e : nbrs) c.insert(c.end(), e.begin(), e.end());
            next[v] = std::move(c);
        }
        if (next == color) break;
        color = std::move(next);
    }
    // Order vertices by color; enumerate within-class permutations for the
    // lexicographically least Cartan matrix.
    std::vector<size_t> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return color[a] < color[b]; });
    std::vector<std::pair<size_t, size_t>> classes; // [begin, end)
    for (size_t i = 0; i < nv;) {
        size_t j = i;
        while (j < nv && color[order[j]] == color[order[i]]) ++j;
        classes.emplace_back(i, j);
        i = j;
    }
    size_t combos = 1;
    bool capped = false;
    for (auto [b, e] : classes) {
        for (size_t m = 2; m <= e - b; ++m) {
            combos *= m;
            if (combos > 10080) {
                capped = true;
                break;
            }
        }
        if (capped) break;
    }
    if (capped) {
        fp.cartan = apply_perm(cartan, order);
        fp.canonicalization_capped = true;
        return fp;
    }
    std::vector<std::vector<size_t>> best = apply_perm(cartan, order);
    std::vector<size_t> perm = order;
    // Enumerate all products of within-class permutations.
    std::vector<std::vector<size_t>> class_perms;
    std::function<void(size_t)> rec = [&](size_t ci) {
        if (ci == classes.size()) {
            auto cand = apply_perm(cartan, perm);
            if (cand < best) best = cand;
            return;
        }
        auto [b, e] = classes[ci];
        std::vector<size_t> block(perm.begin() + b, perm.begin() + e);
        std::sort(block.begin(), block.end());
        do {
            std::copy(block.begin(), block.end(), perm.begin() + b);
            rec(ci + 1);
        } while (std::next_permutation(block.begin(), block.end()));
        std::copy(order.begin() + b, order.begin() + e, perm.begin() + b);
    };
    rec(0);
    fp.cartan = std::move(best);
    return fp;
}

std::string Fingerprint::to_string() const {
    std::string s = "dim=" + std::to_string(total_dim) + " simples=" + std::to_string(num_simples) +
                    " loewy=" + std::to_string(loewy) + " layers=[";
    for (size_t i = 0; i < radical_layers.size(); ++i) s += (i ? "," : "") + std::to_string(radical_layers[i]);
    s += "] cartan=[";
    for (size_t i = 0; i < cartan.size(); ++i) {
        s += i ? ";" : "";
        for (size_t j = 0; j < cartan[i].size(); ++j) s += (j ? "," : "") + std::to_string(cartan[i][j]);
    }
    s += "]";
    if (canonicalization_capped) s += " (canonicalization capped)";
    return s;
}

PresentedQuiver present(AlgebraPtr A) {
    PresentedQuiver out;
    out.quiver.vertex_names = A->vertex_names;
    std::vector<uint32_t> arrow_elem; // basis index per extracted arrow
    for (uint32_t g : A->generators) {
        out.quiver.arrows.push_back({A->basis[g].label, A->basis[g].src, A->basis[g].tgt});
        arrow_elem.push_back(g);
    }
    // Relations: kernel of the evaluation (paths of length d) -> A, degree by
    // degree, modulo arrow-extensions of the lower-degree kernel.
    Fp F = A->field;
    std::vector<std::pair<Path, SparseElem>> prev;
    for (ArrowId a = 0; a < out.quiver.num_arrows(); ++a)
        prev.emplace_back(Path{out.quiver.arrows[a].src, {a}}, SparseElem{{arrow_elem[a], 1u}});
    std::vector<PathPoly> rels;
    FpMat prev_ker(F, prev.size(), 0);
    for (uint32_t d = 2; d <= A->loewy_length && !prev.empty(); ++d) {
        std::vector<std::pair<Path, SparseElem>> cur;
        std::map<std::vector<ArrowId>, size_t> cur_index;
        for (const auto& [w, val] : prev)
            for (ArrowId a = 0; a < out.quiver.num_arrows(); ++a) {
                if (out.quiver.arrows[a].src != w.target(out.quiver)) continue;
                Path nw = concat(w, Path{out.quiver.arrows[a].src, {a}}, out.quiver);
                SparseElem nv = A->mul(SparseElem{{arrow_elem[a], 1u}}, val);
                cur_index[nw.seq] = cur.size();
                cur.emplace_back(nw, nv);
            }
        if (cur.empty() || cur.size() > 5000) break; // best-effort utility
        FpMat eval(F, A->dim(), cur.size());
        for (size_t j = 0; j < cur.size(); ++j)
            for (auto [i, c] : cur[j].second) eval.at(i, j) = c;
        FpMat ker = eval.kernel_basis();
        // Consequence span: lower-degree kernel vectors extended by one arrow
        // on either side.
        FpMat conseq(F, cur.size(), 0);
        for (size_t col = 0; col < prev_ker.cols(); ++col)
            for (ArrowId a = 0; a < out.quiver.num_arrows(); ++a)
                for (int side = 0; side < 2; ++side) {
                    FpMat vec(F, cur.size(), 1);
                    bool ok = true;
                    for (size_t j = 0; j < prev.size() && ok; ++j) {
                        uint32_t c = prev_ker.at(j, col);
                        if (!c) continue;
                        const Path& w = prev[j].first;
                        std::vector<ArrowId> ext;
                        if (side == 0) {
                            if (out.quiver.arrows[a].src != w.target(out.quiver)) { ok = false; break; }
                            ext = w.seq;
                            ext.push_back(a);
                        } else {
                            if (out.quiver.arrows[a].tgt != w.source()) { ok = false; break; }
                            ext.push_back(a);
                            ext.insert(ext.end(), w.seq.begin(), w.seq.end());
                        }
                        auto it = cur_index.find(ext);
                        if (it == cur_index.end()) { ok = false; break; }
                        vec.at(it->second, 0) = c;
                    }
                    if (ok && !vec.is_zero()) conseq = FpMat::hstack(conseq, vec);
                }
        if (conseq.cols()) conseq = subspace::column_reduce(conseq);
        for (size_t col = 0; col < ker.cols(); ++col) {
            FpMat vec = ker.sub_block(0, col, cur.size(), 1);
            if (conseq.cols() && subspace::contains(conseq, vec)) continue;
            conseq = conseq.cols() ? subspace::sum(conseq, vec) : vec;
            PathPoly poly;
            for (size_t j = 0; j < cur.size(); ++j)
                if (uint32_t c = vec.at(j, 0)) poly_add_term(poly, cur[j].first, c, F);
            if (!poly.empty()) rels.push_back(std::move(poly));
        }
        prev_ker = std::move(ker);
        prev = std::move(cur);
    }
    out.relations = std::move(rels);
    out.nilpotency = A->loewy_length;
    return out;
}

} // namespace qhom
