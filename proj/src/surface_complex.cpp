#include "csurf/surface_complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace csurf {

namespace {

std::string tri_str(const Triangle& t) {
    std::ostringstream os;
    os << "(" << t[0] << "," << t[1] << "," << t[2] << ")";
    return os.str();
}

std::string edge_str(Edge e) {
    std::ostringstream os;
    os << "{" << e.a << "," << e.b << "}";
    return os.str();
}

std::array<Edge, 3> tri_edges(const Triangle& t) {
    return {Edge(t[0], t[1]), Edge(t[1], t[2]), Edge(t[0], t[2])};
}

} // namespace

std::vector<Edge> BoundaryCircle::edges() const {
    std::vector<Edge> out;
    out.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        out.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
    return out;
}

bool BoundaryCircle::contains_vertex(VertexId v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

std::vector<std::string> SurfaceComplex::check(int vertex_count,
                                               const std::vector<Triangle>& triangles) {
    std::vector<std::string> bad;
    std::set<std::array<VertexId, 3>> seen;
    std::map<Edge, int> edge_count;
    std::vector<bool> used(static_cast<std::size_t>(std::max(vertex_count, 0)), false);

    for (const Triangle& t : triangles) {
        bool in_range = true;
        for (VertexId v : t) {
            if (v < 0 || v >= vertex_count) {
                bad.push_back("triangle " + tri_str(t) + " has a vertex out of range");
                in_range = false;
                break;
            }
        }
        if (!in_range) continue;
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            bad.push_back("degenerate triangle " + tri_str(t));
            continue;
        }
        std::array<VertexId, 3> key = t;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) {
            bad.push_back("repeated triangle " + tri_str(t));
            continue;
        }
        for (VertexId v : t) used[static_cast<std::size_t>(v)] = true;
        for (Edge e : tri_edges(t)) ++edge_count[e];
    }
    if (!bad.empty()) return bad;

    for (const auto& [e, n] : edge_count) {
        if (n > 2) bad.push_back("edge " + edge_str(e) + " lies in " + std::to_string(n) + " triangles");
    }
    for (int v = 0; v < vertex_count; ++v) {
        if (!used[static_cast<std::size_t>(v)])
            bad.push_back("vertex " + std::to_string(v) + " lies in no triangle");
    }
    if (!bad.empty()) return bad;

    // Vertex links: the triangles around v, glued along the edges through v,
    // must form a single path or a single cycle.
    std::vector<std::vector<int>> at_vertex(static_cast<std::size_t>(vertex_count));
    for (std::size_t i = 0; i < triangles.size(); ++i)
        for (VertexId v : triangles[i]) at_vertex[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));

    for (int v = 0; v < vertex_count; ++v) {
        const auto& tris = at_vertex[static_cast<std::size_t>(v)];
        std::map<Edge, std::vector<int>> spokes; // edge through v -> local triangle indices
        for (std::size_t li = 0; li < tris.size(); ++li) {
            const Triangle& t = triangles[static_cast<std::size_t>(tris[li])];
            for (Edge e : tri_edges(t))
                if (e.a == v || e.b == v) spokes[e].push_back(static_cast<int>(li));
        }
        std::vector<int> degree(tris.size(), 0);
        std::vector<std::vector<int>> adj(tris.size());
        int boundary_spokes = 0;
        for (const auto& [e, owners] : spokes) {
            if (owners.size() == 1) {
                ++boundary_spokes;
            } else {
                adj[static_cast<std::size_t>(owners[0])].push_back(owners[1]);
                adj[static_cast<std::size_t>(owners[1])].push_back(owners[0]);
                ++degree[static_cast<std::size_t>(owners[0])];
                ++degree[static_cast<std::size_t>(owners[1])];
            }
        }
        bool ok = true;
        for (std::size_t li = 0; li < tris.size(); ++li)
            if (degree[li] > 2) ok = false;
        if (boundary_spokes != 0 && boundary_spokes != 2) ok = false;
        if (ok) {
            // single fan component
            std::vector<bool> vis(tris.size(), false);
            std::queue<int> q;
            q.push(0);
            vis[0] = true;
            std::size_t cnt = 1;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                for (int y : adj[static_cast<std::size_t>(x)]) {
                    if (!vis[static_cast<std::size_t>(y)]) {
                        vis[static_cast<std::size_t>(y)] = true;
                        ++cnt;
                        q.push(y);
                    }
                }
            }
            if (cnt != tris.size()) ok = false;
        }
        if (!ok) bad.push_back("link of vertex " + std::to_string(v) + " is not a single path or cycle");
    }
    return bad;
}

SurfaceComplex::SurfaceComplex(int vertex_count, std::vector<Triangle> triangles)
    : vertex_count_(vertex_count), triangles_(std::move(triangles)) {
    std::vector<std::string> bad = check(vertex_count_, triangles_);
    if (!bad.empty()) {
        std::string msg = bad[0];
        for (std::size_t i = 1; i < bad.size(); ++i) msg += "; " + bad[i];
        throw Error(errc::invalid_complex, msg);
    }
    for (std::size_t i = 0; i < triangles_.size(); ++i) {
        for (Edge e : tri_edges(triangles_[i])) {
            auto [it, inserted] = edge_index_.try_emplace(e, static_cast<int>(edges_.size()));
            if (inserted) {
                edges_.push_back(e);
                edge_triangles_.emplace_back();
            }
            edge_triangles_[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
        }
    }
    // edge_index_ iterates sorted; rebuild edges_ in sorted order for determinism.
    std::vector<std::vector<int>> sorted_tris;
    std::vector<Edge> sorted_edges;
    sorted_edges.reserve(edges_.size());
    sorted_tris.reserve(edges_.size());
    for (auto& [e, idx] : edge_index_) {
        sorted_edges.push_back(e);
        sorted_tris.push_back(std::move(edge_triangles_[static_cast<std::size_t>(idx)]));
        idx = static_cast<int>(sorted_edges.size()) - 1;
    }
    edges_ = std::move(sorted_edges);
    edge_triangles_ = std::move(sorted_tris);

    vertex_triangles_.assign(static_cast<std::size_t>(vertex_count_), {});
    for (std::size_t i = 0; i < triangles_.size(); ++i)
        for (VertexId v : triangles_[i]) vertex_triangles_[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));

    boundary_vertex_.assign(static_cast<std::size_t>(vertex_count_), false);
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
        if (edge_triangles_[ei].size() == 1) {
            boundary_vertex_[static_cast<std::size_t>(edges_[ei].a)] = true;
            boundary_vertex_[static_cast<std::size_t>(edges_[ei].b)] = true;
        }
    }
}

const std::vector<int>& SurfaceComplex::triangles_of_edge(Edge e) const {
    auto it = edge_index_.find(e);
    if (it == edge_index_.end()) throw Error(errc::missing_edge, "edge " + edge_str(e) + " does not exist");
    return edge_triangles_[static_cast<std::size_t>(it->second)];
}

int SurfaceComplex::euler_characteristic() const {
    return vertex_count_ - edge_count() + triangle_count();
}

bool SurfaceComplex::connected() const {
    if (triangles_.empty()) return true;
    std::vector<bool> vis(triangles_.size(), false);
    std::queue<int> q;
    q.push(0);
    vis[0] = true;
    std::size_t cnt = 1;
    while (!q.empty()) {
        int t = q.front();
        q.pop();
        for (Edge e : tri_edges(triangles_[static_cast<std::size_t>(t)])) {
            for (int u : triangles_of_edge(e)) {
                if (!vis[static_cast<std::size_t>(u)]) {
                    vis[static_cast<std::size_t>(u)] = true;
                    ++cnt;
                    q.push(u);
                }
            }
        }
    }
    return cnt == triangles_.size();
}

std::vector<BoundaryCircle> SurfaceComplex::boundary_circles() const {
    std::map<VertexId, std::vector<VertexId>> nbr; // boundary vertex -> its two boundary neighbors
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
        if (edge_triangles_[ei].size() == 1) {
            nbr[edges_[ei].a].push_back(edges_[ei].b);
            nbr[edges_[ei].b].push_back(edges_[ei].a);
        }
    }
    std::set<VertexId> unvisited;
    for (const auto& [v, ns] : nbr) unvisited.insert(v);

    std::vector<BoundaryCircle> circles;
    while (!unvisited.empty()) {
        VertexId start = *unvisited.begin(); // smallest remaining id
        const auto& ns = nbr.at(start);
        VertexId next = std::min(ns[0], ns[1]);
        BoundaryCircle circle;
        circle.vertices.push_back(start);
        unvisited.erase(start);
        VertexId prev = start;
        VertexId cur = next;
        while (cur != start) {
            circle.vertices.push_back(cur);
            unvisited.erase(cur);
            const auto& cns = nbr.at(cur);
            VertexId step = (cns[0] == prev) ? cns[1] : cns[0];
            prev = cur;
            cur = step;
        }
        circles.push_back(std::move(circle));
    }
    return circles;
}

TopSignature SurfaceComplex::signature() const {
    if (!connected()) throw Error(errc::disconnected, "signature requires a connected complex");

    // Orientability by propagating triangle orientations across interior edges.
    // flip[t] records whether triangle t keeps its stored orientation.
    std::vector<int> flip(triangles_.size(), -1);
    bool orientable = true;
    std::queue<int> q;
    flip[0] = 0;
    q.push(0);
    auto directed_has = [&](const Triangle& t, bool flipped, VertexId u, VertexId v) {
        // Does the (possibly flipped) oriented triangle traverse u->v?
        Triangle o = t;
        if (flipped) std::swap(o[1], o[2]);
        return (o[0] == u && o[1] == v) || (o[1] == u && o[2] == v) || (o[2] == u && o[0] == v);
    };
    while (!q.empty() && orientable) {
        int t = q.front();
        q.pop();
        const Triangle& tt = triangles_[static_cast<std::size_t>(t)];
        for (Edge e : tri_edges(tt)) {
            const auto& owners = triangles_of_edge(e);
            if (owners.size() != 2) continue;
            int other = owners[0] == t ? owners[1] : owners[0];
            // Consistent orientation: the shared edge must be traversed in
            // opposite directions by the two triangles.
            bool t_fwd = directed_has(tt, flip[static_cast<std::size_t>(t)] == 1, e.a, e.b);
            const Triangle& ot = triangles_[static_cast<std::size_t>(other)];
            bool other_needs_flip = directed_has(ot, false, e.a, e.b) == t_fwd;
            int want = other_needs_flip ? 1 : 0;
            if (flip[static_cast<std::size_t>(other)] == -1) {
                flip[static_cast<std::size_t>(other)] = want;
                q.push(other);
            } else if (flip[static_cast<std::size_t>(other)] != want) {
                orientable = false;
                break;
            }
        }
    }

    TopSignature sig;
    sig.euler = euler_characteristic();
    sig.orientable = orientable;
    sig.boundary_circles = static_cast<int>(boundary_circles().size());
    sig.connected = true;
    sig.genus = orientable ? (2 - sig.euler - sig.boundary_circles) / 2
                           : (2 - sig.euler - sig.boundary_circles);
    return sig;
}

namespace {

// Splits the triangle fan around a path vertex at the path edges through it
// and returns a component label (0/1/...) per incident triangle.
std::map<int, int> fan_components(const SurfaceComplex& c, VertexId v, const std::set<Edge>& cut_spokes) {
    const auto& tris = c.triangles_of_vertex(v);
    std::map<int, std::vector<int>> adj;
    for (int t : tris) adj[t] = {};
    for (int t : tris) {
        const Triangle& tt = c.triangles()[static_cast<std::size_t>(t)];
        for (Edge e : std::array<Edge, 3>{Edge(tt[0], tt[1]), Edge(tt[1], tt[2]), Edge(tt[0], tt[2])}) {
            if (e.a != v && e.b != v) continue;
            if (cut_spokes.count(e)) continue;
            for (int u : c.triangles_of_edge(e)) {
                if (u != t) {
                    adj[t].push_back(u);
                }
            }
        }
    }
    std::map<int, int> comp;
    int label = 0;
    for (int t : tris) {
        if (comp.count(t)) continue;
        std::queue<int> q;
        q.push(t);
        comp[t] = label;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (!comp.count(y)) {
                    comp[y] = label;
                    q.push(y);
                }
            }
        }
        ++label;
    }
    return comp;
}

} // namespace

CutResult cut_along_path_traced(const SurfaceComplex& c, const std::vector<VertexId>& path) {
    if (path.size() < 2)
        throw Error(errc::not_properly_embedded, "cut path needs at least one edge");
    std::set<VertexId> distinct(path.begin(), path.end());
    if (distinct.size() != path.size())
        throw Error(errc::not_properly_embedded, "cut path is not simple");
    for (VertexId v : path)
        if (v < 0 || v >= c.vertex_count())
            throw Error(errc::not_properly_embedded, "cut path vertex out of range");

    const std::size_t k = path.size() - 1; // edge count
    if (!c.is_boundary_vertex(path.front()) || !c.is_boundary_vertex(path.back()))
        throw Error(errc::not_properly_embedded, "cut path endpoints must lie on the boundary");
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (c.is_boundary_vertex(path[i]))
            throw Error(errc::not_properly_embedded,
                        "cut path interior vertex " + std::to_string(path[i]) + " lies on the boundary");
    std::vector<Edge> path_edges;
    for (std::size_t i = 0; i < k; ++i) {
        Edge e(path[i], path[i + 1]);
        if (!c.has_edge(e)) throw Error(errc::missing_edge, "cut path edge " + edge_str(e) + " does not exist");
        if (c.is_boundary_edge(e))
            throw Error(errc::not_properly_embedded, "cut path edge " + edge_str(e) + " lies on the boundary");
        path_edges.push_back(e);
    }

    // Side assignment: split each path vertex's fan at the path edges through
    // it, then stitch sides along the path via the triangles on each path edge.
    std::vector<std::map<int, int>> comp(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        std::set<Edge> spokes;
        if (i > 0) spokes.insert(path_edges[i - 1]);
        if (i < k) spokes.insert(path_edges[i]);
        comp[i] = fan_components(c, path[i], spokes);
    }

    // side0_comp[i]: which fan component of path[i] keeps the original id.
    std::vector<int> side0_comp(path.size());
    {
        const auto& owners = c.triangles_of_edge(path_edges[0]);
        int anchor = std::min(owners[0], owners[1]);
        side0_comp[0] = comp[0].at(anchor);
        for (std::size_t i = 0; i < k; ++i) {
            const auto& eo = c.triangles_of_edge(path_edges[i]);
            int t0 = eo[0], t1 = eo[1];
            int side0_tri = (comp[i].at(t0) == side0_comp[i]) ? t0 : t1;
            comp[i].at(side0_tri); // both triangles are in path[i]'s fan
            side0_comp[i + 1] = comp[i + 1].at(side0_tri);
        }
    }

    std::vector<VertexId> side1_ids(path.size());
    for (std::size_t i = 0; i < path.size(); ++i)
        side1_ids[i] = c.vertex_count() + static_cast<int>(i);

    std::vector<Triangle> new_tris = c.triangles();
    for (std::size_t i = 0; i < path.size(); ++i) {
        for (const auto& [t, label] : comp[i]) {
            if (label == side0_comp[i]) continue;
            for (VertexId& v : new_tris[static_cast<std::size_t>(t)])
                if (v == path[i]) v = side1_ids[i];
        }
    }

    CutResult res{SurfaceComplex(c.vertex_count() + static_cast<int>(path.size()), std::move(new_tris)),
                  std::move(side1_ids), c.vertex_count()};
    return res;
}

SurfaceComplex cut_along_path(const SurfaceComplex& c, const std::vector<VertexId>& path) {
    return cut_along_path_traced(c, path).complex;
}

SurfaceComplex cap_boundary_circle(const SurfaceComplex& c, const BoundaryCircle& circle) {
    if (circle.vertices.size() < 3) throw Error(errc::not_a_boundary_circle, "circle too short");
    const std::vector<Edge> circle_edge_list = circle.edges();
    std::set<Edge> want(circle_edge_list.begin(), circle_edge_list.end());
    bool found = false;
    for (const BoundaryCircle& bc : c.boundary_circles()) {
        auto es = bc.edges();
        if (std::set<Edge>(es.begin(), es.end()) == want) {
            found = true;
            break;
        }
    }
    if (!found) throw Error(errc::not_a_boundary_circle, "not a boundary circle of this complex");

    VertexId cone = c.vertex_count();
    std::vector<Triangle> tris = c.triangles();
    for (std::size_t i = 0; i < circle.vertices.size(); ++i) {
        VertexId u = circle.vertices[i];
        VertexId v = circle.vertices[(i + 1) % circle.vertices.size()];
        tris.push_back({u, v, cone});
    }
    return SurfaceComplex(c.vertex_count() + 1, std::move(tris));
}

SurfaceComplex subdivide_edge(const SurfaceComplex& c, Edge e) {
    const auto& owners = c.triangles_of_edge(e); // throws missing_edge
    VertexId mid = c.vertex_count();
    std::vector<Triangle> tris;
    tris.reserve(c.triangles().size() + owners.size());
    std::set<int> split(owners.begin(), owners.end());
    for (std::size_t i = 0; i < c.triangles().size(); ++i) {
        const Triangle& t = c.triangles()[i];
        if (!split.count(static_cast<int>(i))) {
            tris.push_back(t);
            continue;
        }
        // Apex is the vertex opposite the split edge.
        VertexId apex = -1;
        for (VertexId v : t)
            if (v != e.a && v != e.b) apex = v;
        // Preserve the stored orientation of the split triangle.
        Triangle oriented = t;
        for (int r = 0; r < 3; ++r) {
            if (oriented[0] == apex) break;
            std::rotate(oriented.begin(), oriented.begin() + 1, oriented.end());
        }
        tris.push_back({oriented[0], oriented[1], mid});
        tris.push_back({oriented[0], mid, oriented[2]});
    }
    return SurfaceComplex(c.vertex_count() + 1, std::move(tris));
}

} // namespace csurf
