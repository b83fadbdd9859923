#include "dslice/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace dslice {

namespace {

struct UnionFind {
    std::vector<long> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    long find(long x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(long a, long b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(a)] = b;
    }
};

}  // namespace

struct PdBuilder {
    static PDCode build(std::vector<PDCode::Crossing> xs, size_t offset) {
        PDCode pd;
        pd.xs_ = std::move(xs);
        pd.finish(offset);
        return pd;
    }
};

long PDCode::arc_index(long label) const {
    auto it = std::lower_bound(arc_labels_.begin(), arc_labels_.end(), label);
    if (it == arc_labels_.end() || *it != label)
        throw std::invalid_argument("unknown arc label");
    return static_cast<long>(it - arc_labels_.begin());
}

long PDCode::component_of_arc(long label) const {
    return comp_of_arc_[static_cast<size_t>(arc_index(label))];
}

int PDCode::crossing_sign(long k) const {
    return over_in_slot_[static_cast<size_t>(k)] == 3 ? +1 : -1;
}

PDCode PDCode::mirrored() const {
    std::vector<Crossing> out;
    out.reserve(xs_.size());
    for (size_t k = 0; k < xs_.size(); ++k) {
        const Crossing& x = xs_[k];
        if (over_in_slot_[k] == 1)
            out.push_back({{x.arc[1], x.arc[2], x.arc[3], x.arc[0]}});
        else
            out.push_back({{x.arc[3], x.arc[0], x.arc[1], x.arc[2]}});
    }
    return PdBuilder::build(std::move(out), 0);
}

std::string PDCode::to_string() const {
    std::ostringstream os;
    for (size_t k = 0; k < xs_.size(); ++k) {
        if (k) os << ";";
        os << "X(" << xs_[k].arc[0] << "," << xs_[k].arc[1] << "," << xs_[k].arc[2] << ","
           << xs_[k].arc[3] << ")";
    }
    return os.str();
}

PDCode PDCode::from_crossings(const std::vector<Crossing>& xs) {
    return PdBuilder::build(xs, 0);
}

PDCode PDCode::parse(const std::string& text) {
    std::vector<Crossing> xs;
    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto skip_sep = [&]() {
        while (pos < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ';' ||
                text[pos] == ','))
            ++pos;
    };
    skip_ws();
    // optional PD[...] wrapper
    if (text.compare(pos, 3, "PD[") == 0) pos += 3;
    for (;;) {
        skip_sep();
        if (pos >= text.size()) break;
        if (text[pos] == ']') {
            ++pos;
            continue;
        }
        if (text[pos] != 'X') throw pd_parse_error("expected crossing 'X'", pos);
        ++pos;
        skip_ws();
        if (pos >= text.size() || (text[pos] != '(' && text[pos] != '['))
            throw pd_parse_error("expected '(' or '[' after X", pos);
        char close = text[pos] == '(' ? ')' : ']';
        ++pos;
        Crossing c{};
        for (int i = 0; i < 4; ++i) {
            skip_ws();
            bool neg = false;
            if (pos < text.size() && text[pos] == '-') {
                neg = true;
                ++pos;
            }
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                throw pd_parse_error("expected arc label", pos);
            long v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                v = v * 10 + (text[pos++] - '0');
            if (neg || v <= 0) throw pd_parse_error("arc labels must be positive", pos);
            c.arc[i] = v;
            skip_ws();
            if (i < 3) {
                if (pos >= text.size() || text[pos] != ',')
                    throw pd_parse_error("expected ','", pos);
                ++pos;
            }
        }
        skip_ws();
        if (pos >= text.size() || text[pos] != close)
            throw pd_parse_error("unterminated crossing", pos);
        ++pos;
        xs.push_back(c);
    }
    return PdBuilder::build(std::move(xs), 0);
}

void PDCode::finish(size_t text_offset) {
    const long n = static_cast<long>(xs_.size());
    if (n == 0) {
        // 0-crossing unknot
        ncomp_ = 1;
        nsplit_ = 0;
        return;
    }

    // collect labels and occurrences
    std::map<long, std::vector<std::pair<long, int>>> occ;  // label -> [(crossing, slot)]
    for (long k = 0; k < n; ++k)
        for (int s = 0; s < 4; ++s) occ[xs_[static_cast<size_t>(k)].arc[s]].push_back({k, s});
    arc_labels_.clear();
    for (const auto& [label, os] : occ) {
        if (os.size() != 2)
            throw pd_parse_error("arc multiplicity: label " + std::to_string(label) +
                                     " occurs " + std::to_string(os.size()) + " times",
                                 text_offset);
        arc_labels_.push_back(label);
    }
    const long na = static_cast<long>(arc_labels_.size());
    if (na != 2 * n)
        throw pd_parse_error("arc count does not match crossing count", text_offset);

    auto aidx = [&](long label) { return arc_index(label); };
    auto occurrence = [&](long k, int s) { return 4 * k + s; };

    // components: under-strand joins slot0/slot2, over-strand joins slot1/slot3
    UnionFind comp(static_cast<size_t>(na));
    for (long k = 0; k < n; ++k) {
        const Crossing& x = xs_[static_cast<size_t>(k)];
        comp.unite(aidx(x.arc[0]), aidx(x.arc[2]));
        comp.unite(aidx(x.arc[1]), aidx(x.arc[3]));
    }
    std::map<long, long> comp_id;
    comp_of_arc_.assign(static_cast<size_t>(na), -1);
    for (long i = 0; i < na; ++i) {
        long root = comp.find(i);
        auto it = comp_id.find(root);
        if (it == comp_id.end()) {
            long id = static_cast<long>(comp_id.size());
            comp_id[root] = id;
        }
        comp_of_arc_[static_cast<size_t>(i)] = comp_id[root];
    }
    ncomp_ = static_cast<long>(comp_id.size());

    // orientation roles: +1 = strand arrives here, -1 = strand leaves here
    std::vector<int> role(static_cast<size_t>(4 * n), 0);
    std::queue<long> work;
    auto assign = [&](long k, int s, int r) {
        int& cur = role[static_cast<size_t>(occurrence(k, s))];
        if (cur == 0) {
            cur = r;
            work.push(occurrence(k, s));
        } else if (cur != r) {
            throw pd_parse_error("inconsistent tuples: orientation clash at crossing " +
                                     std::to_string(k),
                                 text_offset);
        }
    };
    // occurrences of each arc by dense index
    std::vector<std::array<long, 2>> arc_occ(static_cast<size_t>(na), {-1, -1});
    for (long k = 0; k < n; ++k)
        for (int s = 0; s < 4; ++s) {
            long ai = aidx(xs_[static_cast<size_t>(k)].arc[s]);
            auto& slots = arc_occ[static_cast<size_t>(ai)];
            if (slots[0] < 0)
                slots[0] = occurrence(k, s);
            else
                slots[1] = occurrence(k, s);
        }

    for (long k = 0; k < n; ++k) {
        assign(k, 0, +1);
        assign(k, 2, -1);
    }
    auto drain = [&]() {
        while (!work.empty()) {
            long o = work.front();
            work.pop();
            long k = o / 4;
            int s = static_cast<int>(o % 4);
            int r = role[static_cast<size_t>(o)];
            // other occurrence of the same arc has the opposite role
            long ai = aidx(xs_[static_cast<size_t>(k)].arc[s]);
            const auto& slots = arc_occ[static_cast<size_t>(ai)];
            long other = slots[0] == o ? slots[1] : slots[0];
            long ok = other / 4;
            int os_ = static_cast<int>(other % 4);
            assign(ok, os_, -r);
            // over-strand partner slot has the opposite role
            if (s == 1) assign(k, 3, -r);
            if (s == 3) assign(k, 1, -r);
        }
    };
    drain();

    // leftover all-over cycles: orient by consecutive arc numbering
    // cyclic successor of a label within its component
    auto cyc_next = [&](long label) {
        long ci = comp_of_arc_[static_cast<size_t>(aidx(label))];
        long best_up = -1, least = -1;
        for (long i = 0; i < na; ++i) {
            if (comp_of_arc_[static_cast<size_t>(i)] != ci) continue;
            long l = arc_labels_[static_cast<size_t>(i)];
            if (least < 0 || l < least) least = l;
            if (l > label && (best_up < 0 || l < best_up)) best_up = l;
        }
        return best_up >= 0 ? best_up : least;
    };
    for (long k = 0; k < n; ++k) {
        if (role[static_cast<size_t>(occurrence(k, 1))] != 0) continue;
        long b = xs_[static_cast<size_t>(k)].arc[1];
        long d = xs_[static_cast<size_t>(k)].arc[3];
        if (cyc_next(b) == d)
            assign(k, 1, +1);  // over runs b -> d
        else
            assign(k, 3, +1);  // over runs d -> b (also the fallback)
        drain();
    }

    over_in_slot_.assign(static_cast<size_t>(n), 0);
    for (long k = 0; k < n; ++k) {
        int r1 = role[static_cast<size_t>(occurrence(k, 1))];
        int r3 = role[static_cast<size_t>(occurrence(k, 3))];
        if (r1 == 0 || r3 == 0 || r1 == r3)
            throw pd_parse_error("inconsistent tuples: cannot orient over-strand at crossing " +
                                     std::to_string(k),
                                 text_offset);
        over_in_slot_[static_cast<size_t>(k)] = r1 == +1 ? 1 : 3;
    }
    // every arc must have one in and one out
    for (long i = 0; i < na; ++i) {
        const auto& slots = arc_occ[static_cast<size_t>(i)];
        int sum = role[static_cast<size_t>(slots[0])] + role[static_cast<size_t>(slots[1])];
        if (sum != 0)
            throw pd_parse_error("inconsistent tuples: arc " +
                                     std::to_string(arc_labels_[static_cast<size_t>(i)]) +
                                     " lacks a direction",
                                 text_offset);
    }

    // split pieces of the 4-valent graph
    UnionFind piece(static_cast<size_t>(n));
    std::map<long, long> first_x_of_arc;
    for (long k = 0; k < n; ++k)
        for (int s = 0; s < 4; ++s) {
            long ai = aidx(xs_[static_cast<size_t>(k)].arc[s]);
            auto it = first_x_of_arc.find(ai);
            if (it == first_x_of_arc.end())
                first_x_of_arc[ai] = k;
            else
                piece.unite(it->second, k);
        }
    std::map<long, long> piece_id;
    split_of_x_.assign(static_cast<size_t>(n), 0);
    for (long k = 0; k < n; ++k) {
        long root = piece.find(k);
        auto it = piece_id.find(root);
        if (it == piece_id.end()) piece_id[root] = static_cast<long>(piece_id.size());
        split_of_x_[static_cast<size_t>(k)] = piece_id[root];
    }
    nsplit_ = static_cast<long>(piece_id.size());
}

// ---------------------------------------------------------------------------
// Faces, checkerboard colouring, Goeritz form, Gordon-Litherland correction.
// ---------------------------------------------------------------------------

namespace {

struct FaceData {
    long nfaces = 0;
    std::vector<long> face_of_corner;  // 4*crossing + corner
    std::vector<int> colour;           // per face
    std::vector<long> piece_of_face;
};

// Corner c of a crossing spans slots c and c+1 (mod 4); the face orbit leaves
// through slot c+1 and picks up the corner at the arrival slot.
FaceData trace_faces(const PDCode& pd) {
    const long n = pd.num_crossings();
    FaceData fd;
    fd.face_of_corner.assign(static_cast<size_t>(4 * n), -1);

    // occurrences of each arc label
    std::map<long, std::vector<long>> occ;  // label -> [4k+s]
    for (long k = 0; k < n; ++k)
        for (int s = 0; s < 4; ++s) occ[pd.crossings()[static_cast<size_t>(k)].arc[s]].push_back(4 * k + s);

    auto other_end = [&](long k, int s) {
        const auto& os = occ[pd.crossings()[static_cast<size_t>(k)].arc[s]];
        return os[0] == 4 * k + s ? os[1] : os[0];
    };

    for (long k = 0; k < n; ++k)
        for (int c = 0; c < 4; ++c) {
            if (fd.face_of_corner[static_cast<size_t>(4 * k + c)] >= 0) continue;
            long face = fd.nfaces++;
            long ck = k;
            int cc = c;
            do {
                fd.face_of_corner[static_cast<size_t>(4 * ck + cc)] = face;
                int leave = (cc + 1) % 4;
                long o = other_end(ck, leave);
                ck = o / 4;
                cc = static_cast<int>(o % 4);
            } while (fd.face_of_corner[static_cast<size_t>(4 * ck + cc)] < 0);
            if (4 * ck + cc != 4 * k + c)
                throw std::runtime_error("face tracing failed; diagram is not planar");
        }

    fd.piece_of_face.assign(static_cast<size_t>(fd.nfaces), -1);
    for (long k = 0; k < n; ++k)
        for (int c = 0; c < 4; ++c)
            fd.piece_of_face[static_cast<size_t>(fd.face_of_corner[static_cast<size_t>(4 * k + c)])] =
                pd.split_piece_of_crossing(k);

    // Euler check per piece: V - E + F = 2
    std::vector<long> vcount(static_cast<size_t>(pd.num_split_pieces()), 0);
    std::vector<long> fcount(static_cast<size_t>(pd.num_split_pieces()), 0);
    for (long k = 0; k < n; ++k) ++vcount[static_cast<size_t>(pd.split_piece_of_crossing(k))];
    for (long f = 0; f < fd.nfaces; ++f) ++fcount[static_cast<size_t>(fd.piece_of_face[static_cast<size_t>(f)])];
    for (long p = 0; p < pd.num_split_pieces(); ++p)
        if (vcount[static_cast<size_t>(p)] - 2 * vcount[static_cast<size_t>(p)] +
                fcount[static_cast<size_t>(p)] != 2)
            throw std::runtime_error("diagram piece is not planar (Euler check failed)");

    // checkerboard colouring: faces across an arc get opposite colours
    fd.colour.assign(static_cast<size_t>(fd.nfaces), -1);
    for (long f = 0; f < fd.nfaces; ++f) {
        if (fd.colour[static_cast<size_t>(f)] >= 0) continue;
        fd.colour[static_cast<size_t>(f)] = 0;
        std::queue<long> bfs;
        bfs.push(f);
        while (!bfs.empty()) {
            long cur = bfs.front();
            bfs.pop();
            for (long k = 0; k < n; ++k)
                for (int s = 0; s < 4; ++s) {
                    long fa = fd.face_of_corner[static_cast<size_t>(4 * k + s)];
                    long fb = fd.face_of_corner[static_cast<size_t>(4 * k + (s + 3) % 4)];
                    // corners s and s-1 flank the arc at slot s
                    if (fa != cur && fb != cur) continue;
                    long othf = fa == cur ? fb : fa;
                    if (fd.colour[static_cast<size_t>(othf)] < 0) {
                        fd.colour[static_cast<size_t>(othf)] =
                            1 - fd.colour[static_cast<size_t>(cur)];
                        bfs.push(othf);
                    } else if (fd.colour[static_cast<size_t>(othf)] ==
                               fd.colour[static_cast<size_t>(cur)]) {
                        throw std::runtime_error("diagram is not checkerboard colourable");
                    }
                }
        }
    }
    return fd;
}

// Goeritz sign of a crossing: +1 when the white corners are the pair {0,2}
// (calibrated against the Hopf links and the trefoil).
int goeritz_eta(bool white02) { return white02 ? +1 : -1; }

// Gordon-Litherland type II test, calibrated alongside goeritz_eta.
bool is_type_two(int crossing_sign, bool white02) {
    bool same_vertical = (crossing_sign > 0) == white02;
    return same_vertical;
}

struct GoeritzData {
    IntMatrix reduced;
    long correction = 0;  // sum of eta over type II crossings
};

GoeritzData goeritz_full(const PDCode& pd, bool flip_colour, long deleted_region) {
    const long n = pd.num_crossings();
    GoeritzData out;
    if (n == 0) {
        out.reduced = IntMatrix(0, 0);
        return out;
    }
    FaceData fd = trace_faces(pd);

    int white = flip_colour ? 1 : 0;
    // white region indexing
    std::vector<long> region_of_face(static_cast<size_t>(fd.nfaces), -1);
    std::vector<long> piece_of_region;
    long nregions = 0;
    for (long f = 0; f < fd.nfaces; ++f)
        if (fd.colour[static_cast<size_t>(f)] == white) {
            region_of_face[static_cast<size_t>(f)] = nregions++;
            piece_of_region.push_back(fd.piece_of_face[static_cast<size_t>(f)]);
        }

    IntMatrix g(nregions, nregions);
    for (long k = 0; k < n; ++k) {
        // corners alternate colours around the crossing
        long f0 = fd.face_of_corner[static_cast<size_t>(4 * k + 0)];
        long f1 = fd.face_of_corner[static_cast<size_t>(4 * k + 1)];
        long f2 = fd.face_of_corner[static_cast<size_t>(4 * k + 2)];
        long f3 = fd.face_of_corner[static_cast<size_t>(4 * k + 3)];
        bool white02 = fd.colour[static_cast<size_t>(f0)] == white;
        long wa = white02 ? f0 : f1;
        long wb = white02 ? f2 : f3;
        int eta = goeritz_eta(white02);
        if (is_type_two(pd.crossing_sign(k), white02)) out.correction += eta;
        long ra = region_of_face[static_cast<size_t>(wa)];
        long rb = region_of_face[static_cast<size_t>(wb)];
        if (ra == rb) continue;
        g.at(ra, rb) -= eta;
        g.at(rb, ra) -= eta;
        g.at(ra, ra) += eta;
        g.at(rb, rb) += eta;
    }

    // delete one region per split piece
    std::vector<bool> drop(static_cast<size_t>(nregions), false);
    if (deleted_region >= 0 && pd.num_split_pieces() == 1) {
        if (deleted_region >= nregions)
            throw std::invalid_argument("deleted region out of range");
        drop[static_cast<size_t>(deleted_region)] = true;
    } else {
        std::vector<bool> seen(static_cast<size_t>(pd.num_split_pieces()), false);
        for (long r = nregions - 1; r >= 0; --r) {
            long p = piece_of_region[static_cast<size_t>(r)];
            if (!seen[static_cast<size_t>(p)]) {
                seen[static_cast<size_t>(p)] = true;
                drop[static_cast<size_t>(r)] = true;
            }
        }
    }
    std::vector<long> keep;
    for (long r = 0; r < nregions; ++r)
        if (!drop[static_cast<size_t>(r)]) keep.push_back(r);
    IntMatrix red(static_cast<long>(keep.size()), static_cast<long>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j)
            red.at(static_cast<long>(i), static_cast<long>(j)) = g.at(keep[i], keep[j]);
    out.reduced = red;
    return out;
}

}  // namespace

IntMatrix linking_matrix(const PDCode& d) {
    long nc = d.num_components();
    IntMatrix lk2(nc, nc);  // twice the linking numbers
    for (long k = 0; k < d.num_crossings(); ++k) {
        const auto& x = d.crossings()[static_cast<size_t>(k)];
        long cu = d.component_of_arc(x.arc[0]);
        long co = d.component_of_arc(x.arc[1]);
        if (cu == co) continue;
        int s = d.crossing_sign(k);
        lk2.at(cu, co) += s;
        lk2.at(co, cu) += s;
    }
    IntMatrix lk(nc, nc);
    for (long i = 0; i < nc; ++i)
        for (long j = 0; j < nc; ++j) {
            if (i == j) continue;
            mpz_class v = lk2.at(i, j);
            if (v % 2 != 0) throw std::logic_error("odd inter-component crossing count");
            lk.at(i, j) = v / 2;
        }
    return lk;
}

IntMatrix goeritz_matrix(const PDCode& d) { return goeritz_full(d, false, -1).reduced; }

IntMatrix detail::goeritz_matrix_opts(const PDCode& d, bool flip_colour, long deleted_region) {
    return goeritz_full(d, flip_colour, deleted_region).reduced;
}

mpz_class link_determinant(const PDCode& d) {
    if (d.num_split_pieces() > 1) return 0;
    return abs(goeritz_matrix(d).det());
}

AbelianGroupClass branched_cover_group_pd(const PDCode& d) {
    AbelianGroupClass g = cokernel_group(goeritz_matrix(d));
    if (d.num_split_pieces() > 1) g.free_rank += d.num_split_pieces() - 1;
    return g;
}

long murasugi_signature(const PDCode& d) { return detail::murasugi_signature_opts(d, false); }

long detail::murasugi_signature_opts(const PDCode& d, bool flip_colour) {
    GoeritzData gd = goeritz_full(d, flip_colour, -1);
    SignatureResult s = exact_signature_symmetric(RatMatrix(gd.reduced));
    return s.signature() - gd.correction;
}

}  // namespace dslice
