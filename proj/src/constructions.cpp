#include "dslice/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace dslice {

PretzelParams PretzelParams::parse(const std::string& text) {
    size_t pos = 0;
    auto skip = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos < text.size() && (text[pos] == 'P' || text[pos] == 'p')) ++pos;
    skip();
    if (pos >= text.size() || text[pos] != '(')
        throw std::invalid_argument("pretzel parameters must look like P(a1,a2,...)");
    ++pos;
    PretzelParams p;
    for (;;) {
        skip();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
            neg = text[pos++] == '-';
        skip();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw std::invalid_argument("expected twist count in pretzel parameters");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        p.twists.push_back(neg ? -v : v);
        skip();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
        }
        throw std::invalid_argument("expected ',' or ')' in pretzel parameters");
    }
    if (p.twists.empty()) throw std::invalid_argument("pretzel needs at least one twist region");
    return p;
}

std::string PretzelParams::to_string() const {
    std::ostringstream os;
    os << "P(";
    for (size_t i = 0; i < twists.size(); ++i) os << (i ? "," : "") << twists[i];
    os << ")";
    return os.str();
}

PretzelParams fold_pretzel(const PretzelParams& p, long j) {
    long k = static_cast<long>(p.twists.size());
    if (j < 1 || j > k) throw std::out_of_range("fold position out of range");
    PretzelParams out;
    out.twists = p.twists;
    long a = p.twists[static_cast<size_t>(j - 1)];
    out.twists.insert(out.twists.begin() + j, {-a, a});
    std::ostringstream prov;
    if (!p.provenance.empty()) prov << p.provenance << "; ";
    prov << "folded " << p.to_string() << " at position " << j
         << " (double sliceness is inherited by the folding construction)";
    out.provenance = prov.str();
    return out;
}

namespace {

// Port encoding for the pretzel generator: 4*crossing + port,
// port 0 = NW, 1 = NE, 2 = SW, 3 = SE.
constexpr int kNW = 0, kNE = 1, kSW = 2, kSE = 3;

int port_angle(int port) {
    switch (port) {
        case kNE: return 45;
        case kNW: return 135;
        case kSW: return 225;
        default: return 315;  // kSE
    }
}

int port_at_angle(int angle) {
    switch (((angle % 360) + 360) % 360) {
        case 45: return kNE;
        case 135: return kNW;
        case 225: return kSW;
        default: return kSE;
    }
}

// strand continuation through a crossing
int diagonal_partner(int port) {
    switch (port) {
        case kNW: return kSE;
        case kSE: return kNW;
        case kNE: return kSW;
        default: return kNE;
    }
}

}  // namespace

PDCode pretzel_pd(const PretzelParams& p) {
    const long k = static_cast<long>(p.twists.size());
    long total = 0;
    for (long a : p.twists) total += std::abs(a);
    if (total == 0)
        throw std::invalid_argument("pretzel with no crossings has no PD representation");

    // crossing ids per column
    std::vector<long> col_base(static_cast<size_t>(k), 0);
    {
        long acc = 0;
        for (long i = 0; i < k; ++i) {
            col_base[static_cast<size_t>(i)] = acc;
            acc += std::abs(p.twists[static_cast<size_t>(i)]);
        }
    }
    const long n = total;

    // endpoints: crossing ports 0..4n-1, sockets 4n..4n+4k-1
    // socket encoding: 4n + 4*i + {0:TL, 1:TR, 2:BL, 3:BR}
    auto socket = [&](long i, int which) { return 4 * n + 4 * i + which; };
    const long nend = 4 * n + 4 * k;
    std::vector<std::vector<long>> adj(static_cast<size_t>(nend));
    auto wire = [&](long a, long b) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    };

    for (long i = 0; i < k; ++i) {
        long m = std::abs(p.twists[static_cast<size_t>(i)]);
        if (m == 0) {
            wire(socket(i, 0), socket(i, 2));  // TL - BL
            wire(socket(i, 1), socket(i, 3));  // TR - BR
            continue;
        }
        long c0 = col_base[static_cast<size_t>(i)];
        wire(socket(i, 0), 4 * c0 + kNW);
        wire(socket(i, 1), 4 * c0 + kNE);
        for (long j = 0; j + 1 < m; ++j) {
            wire(4 * (c0 + j) + kSW, 4 * (c0 + j + 1) + kNW);
            wire(4 * (c0 + j) + kSE, 4 * (c0 + j + 1) + kNE);
        }
        wire(socket(i, 2), 4 * (c0 + m - 1) + kSW);
        wire(socket(i, 3), 4 * (c0 + m - 1) + kSE);
    }
    for (long i = 0; i < k; ++i) {
        long nx = (i + 1) % k;
        wire(socket(i, 1), socket(nx, 0));  // TR_i - TL_{i+1}
        wire(socket(i, 3), socket(nx, 2));  // BR_i - BL_{i+1}
    }

    // arcs: maximal wire paths between crossing ports
    struct Arc {
        long port[2];
        std::vector<long> sockets;  // interior sockets, for orientation seeds
    };
    std::vector<Arc> arcs;
    std::vector<long> arc_of_port(static_cast<size_t>(4 * n), -1);
    std::vector<bool> seen_socket(static_cast<size_t>(nend), false);
    for (long start = 0; start < 4 * n; ++start) {
        if (arc_of_port[static_cast<size_t>(start)] >= 0) continue;
        Arc a;
        a.port[0] = start;
        long prev = start;
        long cur = adj[static_cast<size_t>(start)][0];
        while (cur >= 4 * n) {
            seen_socket[static_cast<size_t>(cur)] = true;
            a.sockets.push_back(cur);
            const auto& ws = adj[static_cast<size_t>(cur)];
            long nxt = ws[0] == prev ? ws[1] : ws[0];
            prev = cur;
            cur = nxt;
        }
        a.port[1] = cur;
        long id = static_cast<long>(arcs.size());
        arcs.push_back(a);
        arc_of_port[static_cast<size_t>(a.port[0])] = id;
        arc_of_port[static_cast<size_t>(a.port[1])] = id;
    }
    for (long s = 4 * n; s < nend; ++s)
        if (!seen_socket[static_cast<size_t>(s)] && !adj[static_cast<size_t>(s)].empty())
            throw std::invalid_argument(
                "pretzel has a crossingless component; not representable as a PD code");

    // orientation: head[a] = port where arc a arrives
    std::vector<long> head(arcs.size(), -1);
    std::vector<bool> arc_done(arcs.size(), false);

    auto trace_component = [&](long arc0, long head0, std::vector<long>& order) {
        long a = arc0, h = head0;
        while (!arc_done[static_cast<size_t>(a)]) {
            arc_done[static_cast<size_t>(a)] = true;
            head[static_cast<size_t>(a)] = h;
            order.push_back(a);
            long out_port = 4 * (h / 4) + diagonal_partner(static_cast<int>(h % 4));
            long na = arc_of_port[static_cast<size_t>(out_port)];
            long nh = arcs[static_cast<size_t>(na)].port[0] == out_port
                          ? arcs[static_cast<size_t>(na)].port[1]
                          : arcs[static_cast<size_t>(na)].port[0];
            a = na;
            h = nh;
        }
    };

    bool all_even = std::all_of(p.twists.begin(), p.twists.end(),
                                [](long a) { return a % 2 == 0; });
    std::vector<std::vector<long>> component_orders;
    if (all_even && k >= 2) {
        // folding orientation: head down the left strand of each column
        for (long i = 0; i < k; ++i) {
            long m = std::abs(p.twists[static_cast<size_t>(i)]);
            if (m == 0) continue;
            long c0 = col_base[static_cast<size_t>(i)];
            long a0 = arc_of_port[static_cast<size_t>(4 * c0 + kNW)];
            if (arc_done[static_cast<size_t>(a0)]) continue;
            std::vector<long> order;
            trace_component(a0, 4 * c0 + kNW, order);
            component_orders.push_back(std::move(order));
        }
    }
    for (size_t a = 0; a < arcs.size(); ++a) {
        if (arc_done[a]) continue;
        std::vector<long> order;
        trace_component(static_cast<long>(a), arcs[a].port[1], order);
        component_orders.push_back(std::move(order));
    }

    // consecutive labels along each oriented component
    std::vector<long> label(arcs.size(), 0);
    long next_label = 1;
    for (const auto& order : component_orders)
        for (long a : order) label[static_cast<size_t>(a)] = next_label++;

    // over/under per column: positive twists put the NE-SW strand on top
    // (the sign convention matching the flat-surface Seifert matrix below)
    std::vector<PDCode::Crossing> xs(static_cast<size_t>(n));
    for (long i = 0; i < k; ++i) {
        long m = std::abs(p.twists[static_cast<size_t>(i)]);
        bool over_nw_se = p.twists[static_cast<size_t>(i)] < 0;
        for (long j = 0; j < m; ++j) {
            long c = col_base[static_cast<size_t>(i)] + j;
            int u1 = over_nw_se ? kNE : kNW;  // under diagonal ports
            int u2 = diagonal_partner(u1);
            long p1 = 4 * c + u1, p2 = 4 * c + u2;
            auto is_head = [&](long port) {
                long a = arc_of_port[static_cast<size_t>(port)];
                return head[static_cast<size_t>(a)] == port;
            };
            long under_in = is_head(p1) ? p1 : p2;
            if (!is_head(under_in)) throw std::logic_error("pretzel orientation trace failed");
            int base_angle = port_angle(static_cast<int>(under_in % 4));
            PDCode::Crossing cr{};
            for (int t = 0; t < 4; ++t) {
                int port = port_at_angle(base_angle + 90 * t);
                long a = arc_of_port[static_cast<size_t>(4 * c + port)];
                cr.arc[t] = label[static_cast<size_t>(a)];
            }
            xs[static_cast<size_t>(c)] = cr;
        }
    }
    return PDCode::from_crossings(xs);
}

IntMatrix pretzel_even_seifert(const PretzelParams& p) {
    const long k = static_cast<long>(p.twists.size());
    std::vector<long> b;
    for (long a : p.twists) {
        if (a % 2 != 0)
            throw std::invalid_argument("pretzel_even_seifert needs all twist counts even");
        b.push_back(a / 2);
    }
    IntMatrix v(k - 1, k - 1);
    for (long i = 0; i + 1 < k; ++i) {
        v.at(i, i) = b[static_cast<size_t>(i)] + b[static_cast<size_t>(i + 1)];
        if (i + 2 < k) {
            v.at(i, i + 1) = -b[static_cast<size_t>(i + 1)];
            v.at(i + 1, i) = -b[static_cast<size_t>(i + 1)];
        }
    }
    return v;
}

const IntMatrix& ColouredBoundarySeifertMatrix::block(int i, int j) const {
    return blocks[static_cast<size_t>(i * mu + j)];
}
IntMatrix& ColouredBoundarySeifertMatrix::block(int i, int j) {
    return blocks[static_cast<size_t>(i * mu + j)];
}

long ColouredBoundarySeifertMatrix::total_size() const {
    return std::accumulate(block_sizes.begin(), block_sizes.end(), 0L);
}

ColouredBoundarySeifertMatrix ColouredBoundarySeifertMatrix::zero(int mu_,
                                                                  std::vector<long> sizes) {
    ColouredBoundarySeifertMatrix b;
    b.mu = mu_;
    b.block_sizes = std::move(sizes);
    for (int i = 0; i < mu_; ++i)
        for (int j = 0; j < mu_; ++j)
            b.blocks.push_back(IntMatrix(b.block_sizes[static_cast<size_t>(i)],
                                         b.block_sizes[static_cast<size_t>(j)]));
    return b;
}

void ColouredBoundarySeifertMatrix::validate() const {
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    if (static_cast<int>(block_sizes.size()) != mu ||
        static_cast<int>(blocks.size()) != mu * mu)
        throw std::invalid_argument("coloured boundary Seifert matrix has wrong block layout");
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j) {
            const IntMatrix& m = block(i, j);
            if (m.rows() != block_sizes[static_cast<size_t>(i)] ||
                m.cols() != block_sizes[static_cast<size_t>(j)])
                throw std::invalid_argument("block shape mismatch");
            if (i != j && !(m == block(j, i).transpose()))
                throw std::invalid_argument("A_ij != A_ji^T");
        }
}

IntMatrix ColouredBoundarySeifertMatrix::assembled() const {
    long n = total_size();
    IntMatrix m(n, n);
    std::vector<long> off(static_cast<size_t>(mu) + 1, 0);
    for (int i = 0; i < mu; ++i)
        off[static_cast<size_t>(i) + 1] = off[static_cast<size_t>(i)] + block_sizes[static_cast<size_t>(i)];
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j) {
            const IntMatrix& blk = block(i, j);
            for (long r = 0; r < blk.rows(); ++r)
                for (long c = 0; c < blk.cols(); ++c)
                    m.at(off[static_cast<size_t>(i)] + r, off[static_cast<size_t>(j)] + c) =
                        blk.at(r, c);
        }
    return m;
}

GeneralizedSeifertCollection boundary_to_gsm(const ColouredBoundarySeifertMatrix& b) {
    b.validate();
    GeneralizedSeifertCollection g;
    g.mu = b.mu;
    g.size = b.total_size();
    g.beta0 = b.mu;  // one connected surface per colour
    g.block_sizes = b.block_sizes;

    for (long bits = 0; bits < (1L << b.mu); ++bits) {
        ColouredBoundarySeifertMatrix eps = b;
        std::vector<int> signs(static_cast<size_t>(b.mu));
        for (int i = 0; i < b.mu; ++i) {
            signs[static_cast<size_t>(i)] = (bits >> i) & 1 ? +1 : -1;
            if (signs[static_cast<size_t>(i)] > 0) eps.block(i, i) = b.block(i, i).transpose();
        }
        g.matrices[GeneralizedSeifertCollection::key_for(signs)] = eps.assembled();
    }
    g.complete_and_validate();
    return g;
}

SigValue cable_signature(const CircleSignatureFn& sigma_k, TorusPoint::Angle w) {
    TorusPoint pt(std::vector<TorusPoint::Angle>{w});
    if (pt.angles[0].p == 0) throw std::invalid_argument("cable signature undefined at w = 1");
    TorusPoint::Angle sq{2 * pt.angles[0].p, pt.angles[0].q};
    return sigma_k(sq);
}

}  // namespace dslice
