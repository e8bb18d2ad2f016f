#include "novikov/simplicial/localsys.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace novikov {

SimplicialComplex::SimplicialComplex(std::vector<std::string> labels, const std::vector<Simplex>& simplices)
    : labels_(std::move(labels)) {
    {
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size()) throw ValidationError("duplicate vertex labels");
    }
    const int nv = static_cast<int>(labels_.size());
    std::vector<std::set<Simplex>> sets(1);
    for (int v = 0; v < nv; ++v) sets[0].insert({v});
    for (Simplex s : simplices) {
        std::sort(s.begin(), s.end());
        if (s.empty()) throw ValidationError("empty simplex");
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ValidationError("simplex repeats a vertex");
        if (s.front() < 0 || s.back() >= nv) throw ValidationError("simplex uses an unknown vertex");
        const int d = static_cast<int>(s.size()) - 1;
        if (d > kMaxDim) throw ValidationError("simplices of dimension above 3 are not supported");
        if (static_cast<int>(sets.size()) <= d) sets.resize(d + 1);
        // all nonempty faces
        for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask & (1u << i)) face.push_back(s[i]);
            sets[face.size() - 1].insert(face);
        }
    }
    for (auto& st : sets) {
        cells_.emplace_back(st.begin(), st.end());
        std::map<Simplex, std::size_t> idx;
        for (std::size_t i = 0; i < cells_.back().size(); ++i) idx[cells_.back()[i]] = i;
        index_.push_back(std::move(idx));
    }
}

const std::vector<Simplex>& SimplicialComplex::cells(int k) const {
    static const std::vector<Simplex> none;
    return k < 0 || k > dim() ? none : cells_[k];
}

long SimplicialComplex::index(const Simplex& s) const {
    const int k = static_cast<int>(s.size()) - 1;
    if (k < 0 || k > dim()) return -1;
    auto it = index_[k].find(s);
    return it == index_[k].end() ? -1 : static_cast<long>(it->second);
}

long SimplicialComplex::euler() const {
    long e = 0;
    for (int k = 0; k <= dim(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(count(k));
    return e;
}

IntegerCocycle::IntegerCocycle(const SimplicialComplex& k, std::map<std::pair<int, int>, long> values) {
    for (auto [edge, v] : values) {
        auto [a, b] = edge;
        if (a == b) throw ValidationError("cocycle value on a degenerate edge");
        if (a > b) {
            std::swap(a, b);
            v = -v;
        }
        if (k.index({a, b}) < 0)
            throw ValidationError("cocycle value on " + k.labels()[a] + " " + k.labels()[b] + ", which is not an edge");
        auto [it, fresh] = values_.emplace(std::pair{a, b}, v);
        if (!fresh && it->second != v) throw ValidationError("conflicting cocycle values on an edge");
        if (v == 0) values_.erase(it);
    }
    for (const auto& tri : k.cells(2)) {
        const long lhs = (*this)(tri[0], tri[1]) + (*this)(tri[1], tri[2]);
        const long rhs = (*this)(tri[0], tri[2]);
        if (lhs != rhs)
            throw ValidationError("cocycle condition fails on triangle " + k.labels()[tri[0]] + " " +
                                  k.labels()[tri[1]] + " " + k.labels()[tri[2]] + ": " + std::to_string(lhs) +
                                  " != " + std::to_string(rhs));
    }
}

long IntegerCocycle::operator()(int u, int v) const {
    if (u > v) return -(*this)(v, u);
    auto it = values_.find({u, v});
    return it == values_.end() ? 0 : it->second;
}

std::vector<long> IntegerCocycle::on_edges(const SimplicialComplex& k) const {
    std::vector<long> out;
    for (const auto& e : k.cells(1)) out.push_back((*this)(e[0], e[1]));
    return out;
}

IntegerCocycle IntegerCocycle::gauge(const SimplicialComplex& k, const std::vector<long>& f) const {
    if (f.size() != k.vertex_count()) throw std::invalid_argument("gauge function needs one value per vertex");
    std::map<std::pair<int, int>, long> v;
    for (const auto& e : k.cells(1)) v[{e[0], e[1]}] = (*this)(e[0], e[1]) + f[e[1]] - f[e[0]];
    return IntegerCocycle(k, std::move(v));
}

Matrix<LaurentPoly> TwistedCochainComplex::coboundary(int k) const {
    if (k >= 0 && k < static_cast<int>(delta.size())) return delta[k];
    const std::size_t from = k >= 0 && k < static_cast<int>(dims.size()) ? dims[k] : 0;
    const std::size_t to = k + 1 >= 0 && k + 1 < static_cast<int>(dims.size()) ? dims[k + 1] : 0;
    return Matrix<LaurentPoly>(to, from);
}

TwistedCochainComplex build_twisted_complex(const SimplicialComplex& k, const IntegerCocycle& a) {
    TwistedCochainComplex out;
    for (int d = 0; d <= k.dim(); ++d) out.dims.push_back(k.count(d));
    for (int d = 0; d < k.dim(); ++d) {
        Matrix<LaurentPoly> m(k.count(d + 1), k.count(d));
        for (std::size_t r = 0; r < k.count(d + 1); ++r) {
            const Simplex& s = k.cells(d + 1)[r];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<long>(i));
                const auto c = static_cast<std::size_t>(k.index(face));
                if (i == 0)
                    m(r, c) += LaurentPoly::monomial(static_cast<int>(a(s[0], s[1])));
                else if (i % 2)
                    m(r, c) -= LaurentPoly(1);
                else
                    m(r, c) += LaurentPoly(1);
            }
        }
        out.delta.push_back(std::move(m));
    }
    for (std::size_t d = 0; d + 1 < out.delta.size(); ++d)
        if (!(out.delta[d + 1] * out.delta[d]).is_zero())
            throw ValidationError("twisted coboundaries do not compose to zero in degree " + std::to_string(d));
    return out;
}

namespace {

std::vector<std::size_t> ranks(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& delta_ranks) {
    std::vector<std::size_t> r(delta_ranks);
    r.resize(dims.size(), 0);
    return r;
}

}  // namespace

BettiProfile betti_generic(const SimplicialComplex& k, const IntegerCocycle& a) {
    auto tc = build_twisted_complex(k, a);
    std::vector<std::size_t> r;
    for (const auto& m : tc.delta) r.push_back(rank(m));
    return betti_from_ranks(tc.dims, ranks(tc.dims, r), "generic t", "RationalFunction");
}

BettiProfile betti_at(const SimplicialComplex& k, const IntegerCocycle& a, const Rational& t0) {
    if (t0.is_zero()) throw SpecializationError("t = 0 is not allowed: holonomy must be invertible");
    auto tc = build_twisted_complex(k, a);
    std::vector<std::size_t> r;
    for (const auto& m : tc.delta) r.push_back(rank(specialize(m, t0)));
    return betti_from_ranks(tc.dims, ranks(tc.dims, r), "t = " + t0.str(), "Rational");
}

JumpSet jumping_locus(const SimplicialComplex& k, const IntegerCocycle& a, int degree) {
    if (degree < 0 || degree > k.dim()) throw std::invalid_argument("degree out of range");
    auto tc = build_twisted_complex(k, a);
    return jumping_set_from(tc.coboundary(degree - 1), tc.coboundary(degree), degree);
}

CyclicCover cyclic_cover(const SimplicialComplex& k, const IntegerCocycle& a, int m) {
    if (m < 2) throw ValidationError("cover fold must be at least 2");
    auto mod = [m](long x) { return static_cast<int>(((x % m) + m) % m); };
    std::vector<std::string> labels;
    std::vector<int> projection;
    for (std::size_t v = 0; v < k.vertex_count(); ++v)
        for (int s = 0; s < m; ++s) {
            labels.push_back(k.labels()[v] + "." + std::to_string(s));
            projection.push_back(static_cast<int>(v));
        }
    // Lifting each simplex from each sheet; vertices v*m+s stay increasing along a base simplex,
    // and a lift is determined by its first vertex, so the result is simplicial.
    std::vector<Simplex> lifts;
    std::set<std::set<int>> seen_vertex_sets;
    for (int d = 0; d <= k.dim(); ++d)
        for (const auto& s : k.cells(d))
            for (int sheet = 0; sheet < m; ++sheet) {
                Simplex lift;
                for (int v : s) lift.push_back(v * m + mod(sheet + a(s[0], v)));
                if (!seen_vertex_sets.insert(std::set<int>(lift.begin(), lift.end())).second)
                    throw ValidationError("cover has coincident simplices; subdivide the base first");
                lifts.push_back(std::move(lift));
            }
    CyclicCover out;
    out.fold = m;
    out.complex = SimplicialComplex(std::move(labels), lifts);
    std::map<std::pair<int, int>, long> values;
    for (const auto& e : out.complex.cells(1)) values[{e[0], e[1]}] = a(projection[e[0]], projection[e[1]]);
    out.cocycle = IntegerCocycle(out.complex, std::move(values));
    out.projection = std::move(projection);
    for (int d = 0; d <= k.dim(); ++d)
        if (out.complex.count(d) != static_cast<std::size_t>(m) * k.count(d))
            throw ValidationError("cover cell count mismatch in dimension " + std::to_string(d));
    return out;
}

Matrix<Rational> pullback_matrix(const SimplicialComplex& base, const CyclicCover& cover, int k) {
    Matrix<Rational> p(cover.complex.count(k), base.count(k));
    for (std::size_t r = 0; r < cover.complex.count(k); ++r) {
        Simplex down;
        for (int v : cover.complex.cells(k)[r]) down.push_back(cover.projection[v]);
        const long c = base.index(down);
        if (c < 0) throw std::logic_error("cover simplex does not project to a simplex");
        p(r, static_cast<std::size_t>(c)) = Rational(1);
    }
    return p;
}

InjectivityVerdict pullback_injectivity_check(const SimplicialComplex& k, const IntegerCocycle& a, int m,
                                              const Rational& t0, int degree) {
    if (t0.is_zero()) throw SpecializationError("t = 0 is not allowed: holonomy must be invertible");
    if (degree < 0 || degree > k.dim()) throw std::invalid_argument("degree out of range");
    CyclicCover cov = cyclic_cover(k, a, m);
    auto down = build_twisted_complex(k, a);
    auto up = build_twisted_complex(cov.complex, cov.cocycle);

    InjectivityVerdict v;
    v.source_dim = betti_at(k, a, t0).betti[degree];
    v.target_dim = betti_at(cov.complex, cov.cocycle, t0).betti[degree];

    auto cocycles = kernel_basis(specialize(down.coboundary(degree), t0));
    Matrix<Rational> p = pullback_matrix(k, cov, degree);
    std::vector<std::vector<Rational>> pulled;
    for (const auto& z : cocycles) pulled.push_back(p.apply(z));
    Matrix<Rational> upstairs_b = degree > 0 ? specialize(up.coboundary(degree - 1), t0)
                                             : Matrix<Rational>(cov.complex.count(0), 0);
    Matrix<Rational> pz = Matrix<Rational>::from_columns(cov.complex.count(degree), pulled);
    const std::size_t rb = upstairs_b.cols() ? rank(upstairs_b) : 0;
    v.image_dim = rank(hcat(upstairs_b, pz)) - rb;
    return v;
}

bool EulerVerdict::ok() const {
    if (generic_euler != cell_euler) return false;
    for (const auto& [t, e] : specialized)
        if (e != cell_euler) return false;
    return true;
}

EulerVerdict euler_check(const SimplicialComplex& k, const IntegerCocycle& a, const std::vector<Rational>& at) {
    EulerVerdict v;
    v.cell_euler = k.euler();
    v.generic_euler = betti_generic(k, a).euler();
    for (const auto& t0 : at) v.specialized.emplace_back(t0, betti_at(k, a, t0).euler());
    return v;
}

ComplexText parse_complex_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> labels;
    std::map<std::string, int> index;
    std::vector<Simplex> simplices;
    std::vector<std::pair<int, std::tuple<std::string, std::string, long>>> weights;
    int no = 0;
    auto fail = [&no](const std::string& what) {
        return ValidationError("line " + std::to_string(no) + ": " + what);
    };
    for (std::string line; std::getline(in, line);) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string s; ls >> s;) tok.push_back(s);
        if (tok.empty()) continue;
        if (tok[0] == "v") {
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (index.count(tok[i])) throw fail("duplicate vertex '" + tok[i] + "'");
                index[tok[i]] = static_cast<int>(labels.size());
                labels.push_back(tok[i]);
            }
        } else if (tok[0] == "s") {
            if (tok.size() < 2) throw fail("empty simplex");
            Simplex s;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto it = index.find(tok[i]);
                if (it == index.end()) throw fail("unknown vertex '" + tok[i] + "'");
                s.push_back(it->second);
            }
            simplices.push_back(std::move(s));
        } else if (tok[0] == "w") {
            if (tok.size() != 5 || tok[3] != "=") throw fail("expected 'w a b = n'");
            long value = 0;
            try {
                std::size_t pos = 0;
                value = std::stol(tok[4], &pos);
                if (pos != tok[4].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw fail("cocycle values must be integers, got '" + tok[4] + "'");
            }
            weights.push_back({no, {tok[1], tok[2], value}});
        } else {
            throw fail("unknown keyword '" + tok[0] + "'");
        }
    }
    if (labels.empty()) throw ValidationError("complex has no vertices");
    ComplexText out;
    try {
        out.complex = SimplicialComplex(labels, simplices);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("complex: ") + e.what());
    }
    std::map<std::pair<int, int>, long> values;
    for (const auto& [line_no, w] : weights) {
        no = line_no;
        const auto& [a, b, value] = w;
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end() || ib == index.end()) throw fail("unknown vertex in cocycle line");
        int u = ia->second, v = ib->second;
        long val = value;
        if (u > v) {
            std::swap(u, v);
            val = -val;
        }
        if (values.count({u, v})) throw fail("cocycle value given twice for " + a + " " + b);
        values[{u, v}] = val;
    }
    out.cocycle = IntegerCocycle(out.complex, std::move(values));
    return out;
}

}  // namespace novikov
