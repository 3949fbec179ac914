#include "markov_ml/error.hpp"
#include "markov_ml/problems.hpp"

#include <algorithm>
#include <utility>

namespace markov_ml {

namespace {

struct Circumscribed {
    Triangle v;
    double cx;
    double cy;
    double r2;
};

Circumscribed circumscribe(const std::vector<Point2> &pts, Index a, Index b, Index c) {
    const Point2 &p = pts[a];
    const Point2 &q = pts[b];
    const Point2 &r = pts[c];
    const double bx = q.x - p.x, by = q.y - p.y;
    const double cx = r.x - p.x, cy = r.y - p.y;
    const double d = 2.0 * (bx * cy - by * cx);
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    // Collinear triples only arise with the super-triangle far away; give them
    // an empty circle so they are never considered "bad" spuriously.
    if (d == 0.0)
        return {{a, b, c}, p.x, p.y, -1.0};
    const double ux = (cy * b2 - by * c2) / d;
    const double uy = (bx * c2 - cx * b2) / d;
    return {{a, b, c}, p.x + ux, p.y + uy, ux * ux + uy * uy};
}

using Edge = std::pair<Index, Index>;

Edge make_edge(Index a, Index b) { return a < b ? Edge{a, b} : Edge{b, a}; }

} // namespace

std::vector<Triangle> delaunay_triangulation(const std::vector<Point2> &input) {
    const auto n = static_cast<Index>(input.size());
    if (n < 3)
        throw InputError("problem_gen: Delaunay triangulation needs at least 3 points");

    double xmin = input[0].x, xmax = input[0].x, ymin = input[0].y, ymax = input[0].y;
    for (const auto &p : input) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double midx = 0.5 * (xmin + xmax);
    const double midy = 0.5 * (ymin + ymax);

    std::vector<Point2> pts = input;
    pts.push_back({midx - 100.0 * span, midy - 100.0 * span});
    pts.push_back({midx + 100.0 * span, midy - 100.0 * span});
    pts.push_back({midx, midy + 100.0 * span});

    std::vector<Circumscribed> tris;
    tris.push_back(circumscribe(pts, n, n + 1, n + 2));

    std::vector<Edge> boundary;
    std::vector<Edge> edges;
    for (Index p = 0; p < n; ++p) {
        const double px = pts[p].x, py = pts[p].y;
        edges.clear();
        // Remove every triangle whose circumcircle strictly contains p; keep
        // their edges for the cavity boundary.
        for (std::size_t t = 0; t < tris.size();) {
            const auto &tr = tris[t];
            const double dx = px - tr.cx, dy = py - tr.cy;
            if (dx * dx + dy * dy < tr.r2) {
                edges.push_back(make_edge(tr.v[0], tr.v[1]));
                edges.push_back(make_edge(tr.v[1], tr.v[2]));
                edges.push_back(make_edge(tr.v[2], tr.v[0]));
                tris[t] = tris.back();
                tris.pop_back();
            } else {
                ++t;
            }
        }
        if (edges.empty())
            throw Error("problem_gen: Delaunay insertion found no cavity (duplicate point?)");
        std::sort(edges.begin(), edges.end());
        boundary.clear();
        for (std::size_t i = 0; i < edges.size();) {
            std::size_t j = i;
            while (j < edges.size() && edges[j] == edges[i])
                ++j;
            if (j - i == 1)
                boundary.push_back(edges[i]);
            i = j;
        }
        for (const auto &[a, b] : boundary)
            tris.push_back(circumscribe(pts, a, b, p));
    }

    std::vector<Triangle> out;
    out.reserve(tris.size());
    for (const auto &tr : tris) {
        if (tr.v[0] >= n || tr.v[1] >= n || tr.v[2] >= n)
            continue;
        Triangle t = tr.v;
        std::sort(t.begin(), t.end());
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace markov_ml
