#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <utility>

#include "taxel/error.hpp"
#include "taxel/scanconv.hpp"

namespace taxel {

namespace {

constexpr double kMaxDeviation = 0.75;
constexpr double kInfeasible = std::numeric_limits<double>::infinity();

double robust_root(double r0, double z0, double z1, double g) {
    const double n0 = r0 * z0;
    double s0 = z1 - 1.0;
    double s1 = g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
    double s = 0.0;
    for (int i = 0; i < 1100; ++i) {
        s = 0.5 * (s0 + s1);
        if (s == s0 || s == s1) break;
        const double ratio0 = n0 / (s + r0);
        const double ratio1 = z1 / (s + 1.0);
        g = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if (g > 0.0) {
            s0 = s;
        } else if (g < 0.0) {
            s1 = s;
        } else {
            break;
        }
    }
    return s;
}

// Eberly's bisection for e0 >= e1 > 0 and a point in the first quadrant.
double distance_first_quadrant(double e0, double e1, double y0, double y1) {
    if (y1 > 0.0) {
        if (y0 > 0.0) {
            const double z0 = y0 / e0;
            const double z1 = y1 / e1;
            const double g = z0 * z0 + z1 * z1 - 1.0;
            if (g == 0.0) return 0.0;
            const double r0 = (e0 / e1) * (e0 / e1);
            const double sbar = robust_root(r0, z0, z1, g);
            const double x0 = r0 * y0 / (sbar + r0);
            const double x1 = y1 / (sbar + 1.0);
            return std::hypot(x0 - y0, x1 - y1);
        }
        return std::abs(y1 - e1);
    }
    const double numer0 = e0 * y0;
    const double denom0 = e0 * e0 - e1 * e1;
    if (numer0 < denom0) {
        const double xde0 = numer0 / denom0;
        const double x0 = e0 * xde0;
        const double x1 = e1 * std::sqrt(1.0 - xde0 * xde0);
        return std::hypot(x0 - y0, x1);
    }
    return std::abs(y0 - e0);
}

// Quadrant geometry in doubled coordinates relative to the box centre.
// u = 2x - (W-1) grows right, v = (H-1) - 2y grows up. The quadrant path runs
// from the top apex (pu, B) to the right apex (A, pv); runs are joined by
// (+2, -2) diagonal steps only.
struct Quadrant {
    int A, B, pu, pv;
    std::vector<double> objective;  // squared distance to the pixel-centre ellipse
    std::vector<bool> feasible;     // within kMaxDeviation of the bbox ellipse

    Quadrant(int w, int h) : A(w - 1), B(h - 1), pu(A % 2), pv(B % 2) {
        objective.assign(static_cast<std::size_t>((A + 1) * (B + 1)), 0.0);
        feasible.assign(objective.size(), false);
        for (int u = 0; u <= A; ++u) {
            for (int v = 0; v <= B; ++v) {
                const double px = u / 2.0, py = v / 2.0;
                const double d1 = ellipse_distance((w - 1) / 2.0, (h - 1) / 2.0, px, py);
                const double d2 = ellipse_distance(w / 2.0, h / 2.0, px, py);
                objective[idx(u, v)] = d1 * d1;
                feasible[idx(u, v)] = d2 <= kMaxDeviation;
            }
        }
    }

    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u * (B + 1) + v); }
    double cost(int u, int v) const {
        if (u < 0 || v < 0 || u > A || v > B) return kInfeasible;
        return feasible[idx(u, v)] ? objective[idx(u, v)] : kInfeasible;
    }
};

struct Node {
    double cost = kInfeasible;
    int parent = -1;
    char kind = 'h';
    int length = 0;
    bool settled = false;
};

struct Search {
    std::vector<Node> nodes;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    explicit Search(std::size_t n) : nodes(n) {}

    void relax(int key, double cost, int parent, char kind, int length) {
        Node& n = nodes[static_cast<std::size_t>(key)];
        if (n.settled || !(cost < n.cost)) return;
        n.cost = cost;
        n.parent = parent;
        n.kind = kind;
        n.length = length;
        queue.push({cost, key});
    }
};

struct RunStep {
    char kind;
    int length;
};

std::vector<std::pair<int, int>> expand(const std::vector<RunStep>& runs, int u0, int v0) {
    std::vector<std::pair<int, int>> path;
    int u = u0, v = v0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (i > 0) {
            u += 2;
            v -= 2;
        }
        for (int k = 0; k < runs[i].length; ++k) {
            if (k > 0) {
                if (runs[i].kind == 'h') {
                    u += 2;
                } else {
                    v -= 2;
                }
            }
            path.push_back({u, v});
        }
    }
    return path;
}

std::vector<RunStep> unwind(const Search& s, int key) {
    std::vector<RunStep> runs;
    for (int k = key; k >= 0; k = s.nodes[static_cast<std::size_t>(k)].parent) {
        const Node& n = s.nodes[static_cast<std::size_t>(k)];
        runs.push_back({n.kind, n.length});
    }
    std::reverse(runs.begin(), runs.end());
    return runs;
}

// General quadrant: horizontal runs never lengthen moving away from the top apex,
// vertical runs never shorten approaching the right apex.
std::vector<std::pair<int, int>> quadrant_path(const Quadrant& q) {
    const int maxlen = std::max(q.A, q.B) + 2;
    auto key = [&](int u, int v, int phase, int last) {
        return ((u * (q.B + 1) + v) * 3 + phase) * (maxlen + 1) + last;
    };
    auto decode = [&](int k) {
        const int last = k % (maxlen + 1);
        k /= maxlen + 1;
        const int phase = k % 3;
        k /= 3;
        return std::make_tuple(k / (q.B + 1), k % (q.B + 1), phase, last);
    };
    Search s(static_cast<std::size_t>(key(q.A, q.B, 2, maxlen) + 1));

    double acc = 0.0;
    for (int k0 = 1; q.pu + 2 * (k0 - 1) <= q.A; ++k0) {
        const int u = q.pu + 2 * (k0 - 1);
        const double c = q.cost(u, q.B);
        if (c == kInfeasible) break;
        acc += c;
        const int full = q.pu == 0 ? 2 * k0 - 1 : 2 * k0;
        s.relax(key(u, q.B, 0, std::min(full, maxlen)), acc, -1, 'h', k0);
    }

    while (!s.queue.empty()) {
        const auto [cost, k] = s.queue.top();
        s.queue.pop();
        Node& node = s.nodes[static_cast<std::size_t>(k)];
        if (node.settled) continue;
        node.settled = true;
        const auto [u, v, phase, last] = decode(k);
        if (phase == 2) {
            return expand(unwind(s, k), q.pu, q.B);
        }
        const int su = u + 2, sv = v - 2;
        if (su > q.A || sv < q.pv) continue;

        if (phase == 0 && sv != q.pv) {
            double hacc = 0.0;
            for (int len = 1; len <= last; ++len) {
                const int pu = su + 2 * (len - 1);
                if (pu >= q.A) break;
                const double c = q.cost(pu, sv);
                if (c == kInfeasible) break;
                hacc += c;
                s.relax(key(pu, sv, 0, len), cost + hacc, k, 'h', len);
            }
        }

        const int minlen = phase == 0 ? 1 : last;
        double vacc = 0.0;
        for (int len = 1; sv - 2 * (len - 1) >= q.pv; ++len) {
            const int pv = sv - 2 * (len - 1);
            const double c = q.cost(su, pv);
            if (c == kInfeasible) break;
            vacc += c;
            if (pv == q.pv) {
                const int full = q.pv == 0 ? 2 * len - 1 : 2 * len;
                if (full >= minlen && su == q.A) {
                    s.relax(key(su, pv, 2, std::min(full, maxlen)), cost + vacc, k, 'v', len);
                }
                break;
            }
            if (len >= minlen && su < q.A) {
                s.relax(key(su, pv, 1, len), cost + vacc, k, 'v', len);
            }
        }
    }
    return {};
}

// Square boxes: search one octant (strictly above the diagonal u = v) with
// horizontal runs only, then mirror it across the diagonal.
std::vector<std::pair<int, int>> octant_path(const Quadrant& q) {
    const int maxlen = q.A + 2;
    auto key = [&](int u, int v, int last) { return (u * (q.B + 1) + v) * (maxlen + 1) + last; };
    const int finish_plain = key(q.A, q.B, maxlen) + 1;
    const int finish_middle = finish_plain + 1;
    Search s(static_cast<std::size_t>(finish_middle + 1));

    double acc = 0.0;
    for (int k0 = 1; q.pu + 2 * (k0 - 1) < q.B; ++k0) {
        const int u = q.pu + 2 * (k0 - 1);
        const double c = q.cost(u, q.B);
        if (c == kInfeasible) break;
        acc += 2.0 * c;
        const int full = q.pu == 0 ? 2 * k0 - 1 : 2 * k0;
        s.relax(key(u, q.B, std::min(full, maxlen)), acc, -1, 'h', k0);
    }

    while (!s.queue.empty()) {
        const auto [cost, k] = s.queue.top();
        s.queue.pop();
        Node& node = s.nodes[static_cast<std::size_t>(k)];
        if (node.settled) continue;
        node.settled = true;
        if (k == finish_plain || k == finish_middle) {
            auto runs = unwind(s, node.parent);
            auto path = expand(runs, q.pu, q.B);
            const auto half = path;
            if (k == finish_middle) {
                const auto [u, v] = path.back();
                path.push_back({u + 2, v - 2});
            }
            for (auto it = half.rbegin(); it != half.rend(); ++it) path.push_back({it->second, it->first});
            return path;
        }
        const int last = k % (maxlen + 1);
        const int cell = k / (maxlen + 1);
        const int u = cell / (q.B + 1), v = cell % (q.B + 1);

        if (v == u + 2) {
            s.relax(finish_plain, cost, k, 'h', 0);
            continue;
        }
        const int su = u + 2, sv = v - 2;
        if (su == sv) {
            const double c = q.cost(su, sv);
            if (c != kInfeasible) s.relax(finish_middle, cost + c, k, 'h', 0);
            continue;
        }
        if (su > sv) continue;
        double hacc = 0.0;
        for (int len = 1; len <= last; ++len) {
            const int pu = su + 2 * (len - 1);
            if (pu >= sv) break;
            const double c = q.cost(pu, sv);
            if (c == kInfeasible) break;
            hacc += 2.0 * c;
            s.relax(key(pu, sv, len), cost + hacc, k, 'h', len);
        }
    }
    return {};
}

}  // namespace

double ellipse_distance(double a, double b, double px, double py) {
    px = std::abs(px);
    py = std::abs(py);
    if (a >= b) return distance_first_quadrant(a, b, px, py);
    return distance_first_quadrant(b, a, py, px);
}

std::vector<Coord> conic_loop(int width_px, int height_px) {
    if (width_px < 3 || height_px < 3) {
        throw TooSmallError("conic needs a bounding box of at least 3x3");
    }
    const Quadrant q(width_px, height_px);
    const auto quad = width_px == height_px ? octant_path(q) : quadrant_path(q);
    if (quad.empty()) {
        throw Error("no conic ring satisfies the deviation bound for " + std::to_string(width_px) +
                    "x" + std::to_string(height_px));
    }

    std::vector<std::pair<int, int>> ring;
    for (auto [u, v] : quad) ring.push_back({u, v});
    for (auto it = quad.rbegin(); it != quad.rend(); ++it) ring.push_back({it->first, -it->second});
    for (auto [u, v] : quad) ring.push_back({-u, -v});
    for (auto it = quad.rbegin(); it != quad.rend(); ++it) ring.push_back({-it->first, it->second});

    std::vector<Coord> loop;
    for (auto [u, v] : ring) {
        const Coord c{(u + q.A) / 2, (q.B - v) / 2};
        if (loop.empty() || !(loop.back() == c)) loop.push_back(c);
    }
    while (loop.size() > 1 && loop.back() == loop.front()) loop.pop_back();

    // Start at the left end of the top apex run.
    std::size_t start = 0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        if (loop[i].y < loop[start].y || (loop[i].y == loop[start].y && loop[i].x < loop[start].x)) start = i;
    }
    std::rotate(loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>(start), loop.end());
    return loop;
}

}  // namespace taxel
