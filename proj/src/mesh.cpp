#include "boxtherm/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "boxtherm/errors.hpp"

namespace boxtherm {

namespace {

constexpr double kObtuseTolRad = 1e-9;
constexpr double kAreaRelTol = 1e-12;

std::uint64_t next_mesh_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

// Walks the boundary loop (directed edges, domain on the left) and returns
// the enclosed polygon area. Rejects meshes whose boundary is not a set of
// closed loops; a convex domain has exactly one.
double boundary_polygon_area(const Mesh& mesh,
                             const std::vector<MeshEdge>& edges) {
  std::map<int, int> next; // directed boundary edge start -> end
  for (const MeshEdge& e : edges) {
    if (e.tri_count != 1) continue;
    const auto& t = mesh.triangles[static_cast<size_t>(e.tri[0])];
    for (int c = 0; c < 3; ++c) {
      const int s = t[static_cast<size_t>(c)];
      const int d = t[static_cast<size_t>((c + 1) % 3)];
      if ((s == e.a && d == e.b) || (s == e.b && d == e.a)) {
        if (next.count(s))
          throw Error("boundary is not a set of simple closed loops");
        next[s] = d;
      }
    }
  }
  double area = 0.0;
  std::vector<Vec2> loop;
  while (!next.empty()) {
    loop.clear();
    const int start = next.begin()->first;
    int v = start;
    do {
      loop.push_back(mesh.point(v));
      const auto it = next.find(v);
      if (it == next.end()) throw Error("boundary loop is not closed");
      const int w = it->second;
      next.erase(it);
      v = w;
    } while (v != start);
    area += polygon_area(loop);
  }
  return area;
}

void check_non_obtuse(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[static_cast<size_t>(t)];
  const Vec2 a = mesh.point(tri[0]);
  const Vec2 b = mesh.point(tri[1]);
  const Vec2 c = mesh.point(tri[2]);
  const double limit = M_PI / 2.0 + kObtuseTolRad;
  if (corner_angle(a, b, c) > limit || corner_angle(b, c, a) > limit ||
      corner_angle(c, a, b) > limit)
    throw Error("obtuse triangle " + std::to_string(t) +
                " (circumcenter would leave the triangle)");
}

} // namespace

int Mesh::interior_count() const {
  int n = 0;
  for (char b : boundary)
    if (!b) ++n;
  return n;
}

std::vector<MeshEdge> collect_edges(const Mesh& mesh) {
  std::map<std::pair<int, int>, MeshEdge> edges;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    for (int c = 0; c < 3; ++c) {
      int a = tri[static_cast<size_t>(c)];
      int b = tri[static_cast<size_t>((c + 1) % 3)];
      if (a > b) std::swap(a, b);
      MeshEdge& e = edges[{a, b}];
      if (e.tri_count == 0) {
        e.a = a;
        e.b = b;
      }
      if (e.tri_count >= 2)
        throw Error("edge (" + std::to_string(a) + "," + std::to_string(b) +
                    ") shared by more than two triangles");
      e.tri[e.tri_count++] = t;
    }
  }
  std::vector<MeshEdge> out;
  out.reserve(edges.size());
  for (auto& [key, e] : edges) out.push_back(e);
  return out;
}

Mesh build_mesh(std::vector<Vec2> vertices,
                std::vector<std::array<int, 3>> triangles) {
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);

  const int nv = mesh.vertex_count();
  if (nv < 3 || mesh.triangles.empty())
    throw Error("mesh needs at least 3 vertices and 1 triangle");

  std::vector<char> used(static_cast<size_t>(nv), 0);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    for (int v : tri) {
      if (v < 0 || v >= nv)
        throw Error("triangle " + std::to_string(t) +
                    ": vertex index out of range");
      used[static_cast<size_t>(v)] = 1;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw Error("triangle " + std::to_string(t) + ": repeated vertex");
    if (signed_area(mesh.point(tri[0]), mesh.point(tri[1]),
                    mesh.point(tri[2])) <= 0.0)
      throw Error("triangle " + std::to_string(t) +
                  ": non-positive area (must be counterclockwise)");
    check_non_obtuse(mesh, t);
  }
  for (int v = 0; v < nv; ++v)
    if (!used[static_cast<size_t>(v)])
      throw Error("isolated vertex " + std::to_string(v));

  const std::vector<MeshEdge> edges = collect_edges(mesh);

  mesh.boundary.assign(static_cast<size_t>(nv), 0);
  double hmax = 0.0;
  for (const MeshEdge& e : edges) {
    hmax = std::max(hmax, norm(mesh.point(e.b) - mesh.point(e.a)));
    if (e.tri_count == 1) {
      mesh.boundary[static_cast<size_t>(e.a)] = 1;
      mesh.boundary[static_cast<size_t>(e.b)] = 1;
    }
  }
  mesh.h = hmax;

  mesh.domain_area = boundary_polygon_area(mesh, edges);
  std::vector<double> areas(mesh.triangles.size());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    areas[static_cast<size_t>(t)] =
        signed_area(mesh.point(tri[0]), mesh.point(tri[1]), mesh.point(tri[2]));
  }
  const double tri_sum = pairwise_sum(areas);
  if (std::abs(tri_sum - mesh.domain_area) >
      kAreaRelTol * std::abs(mesh.domain_area))
    throw Error("triangle areas do not tile the domain (overlap or hole)");

  mesh.id = next_mesh_id();
  return mesh;
}

Mesh generate_structured_mesh(int n) {
  if (n < 1) throw Error("subdivision count must be >= 1");
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<size_t>(2 * n * n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = id(i, j), v10 = id(i + 1, j);
      const int v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  return build_mesh(std::move(vertices), std::move(triangles));
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Vec2> vertices = mesh.vertices;
  std::map<std::pair<int, int>, int> midpoint_of;
  auto mid = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    auto [it, inserted] = midpoint_of.try_emplace({a, b}, -1);
    if (inserted) {
      it->second = static_cast<int>(vertices.size());
      vertices.push_back(midpoint(mesh.point(a), mesh.point(b)));
    }
    return it->second;
  };

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(mesh.triangles.size() * 4);
  for (const auto& t : mesh.triangles) {
    const int m01 = mid(t[0], t[1]);
    const int m12 = mid(t[1], t[2]);
    const int m02 = mid(t[0], t[2]);
    triangles.push_back({t[0], m01, m02});
    triangles.push_back({t[1], m12, m01});
    triangles.push_back({t[2], m02, m12});
    triangles.push_back({m01, m12, m02});
  }
  return build_mesh(std::move(vertices), std::move(triangles));
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Token {
  std::string text;
  long line;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back({tok, lineno});
  }
  return tokens;
}

class TokenReader {
public:
  explicit TokenReader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  long last_line() const {
    return tokens_.empty() ? 1 : tokens_.back().line;
  }
  const Token& peek() const { return tokens_[pos_]; }

  long next_int(const char* what, long lo, long hi) {
    const Token& t = take(what);
    long v = 0;
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
      throw ParseError(std::string("expected integer for ") + what + ", got '" +
                       t.text + "'", t.line);
    if (v < lo || v > hi)
      throw ParseError(std::string(what) + " out of range: " + t.text, t.line);
    return v;
  }

  double next_double(const char* what) {
    const Token& t = take(what);
    double v = 0.0;
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
      throw ParseError(std::string("expected number for ") + what + ", got '" +
                       t.text + "'", t.line);
    return v;
  }

private:
  const Token& take(const char* what) {
    if (done())
      throw ParseError(std::string("unexpected end of file, expected ") + what,
                       last_line());
    return tokens_[pos_++];
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

} // namespace

Mesh parse_mesh(const std::string& text) {
  TokenReader in(tokenize(text));

  const long nv = in.next_int("vertex count", 3, 1L << 30);
  const long nt = in.next_int("triangle count", 1, 1L << 30);

  std::vector<Vec2> vertices;
  std::vector<char> flags;
  vertices.reserve(static_cast<size_t>(nv));
  for (long v = 0; v < nv; ++v) {
    const double x = in.next_double("vertex x");
    const double y = in.next_double("vertex y");
    const long b = in.next_int("boundary flag", 0, 1);
    vertices.push_back({x, y});
    flags.push_back(static_cast<char>(b));
  }

  std::vector<std::array<int, 3>> triangles;
  std::vector<long> tri_line;
  triangles.reserve(static_cast<size_t>(nt));
  for (long t = 0; t < nt; ++t) {
    const long line = in.done() ? in.last_line() : in.peek().line;
    std::array<int, 3> tri{};
    for (int c = 0; c < 3; ++c) {
      const long v = in.next_int("triangle vertex index", 0, 1L << 30);
      if (v >= nv)
        throw ParseError("vertex index out of range: " + std::to_string(v),
                         line);
      tri[static_cast<size_t>(c)] = static_cast<int>(v);
    }
    triangles.push_back(tri);
    tri_line.push_back(line);
  }
  if (!in.done())
    throw ParseError("unexpected trailing data '" + in.peek().text + "'",
                     in.peek().line);

  // Per-triangle checks first so failures carry the offending line.
  for (size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    const Vec2 a = vertices[static_cast<size_t>(tri[0])];
    const Vec2 b = vertices[static_cast<size_t>(tri[1])];
    const Vec2 c = vertices[static_cast<size_t>(tri[2])];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw ParseError("repeated vertex in triangle", tri_line[t]);
    if (signed_area(a, b, c) <= 0.0)
      throw ParseError("non-positive triangle area (vertices must be "
                       "counterclockwise)", tri_line[t]);
    const double limit = M_PI / 2.0 + kObtuseTolRad;
    if (corner_angle(a, b, c) > limit || corner_angle(b, c, a) > limit ||
        corner_angle(c, a, b) > limit)
      throw ParseError("obtuse triangle", tri_line[t]);
  }

  // Conformity with line attribution: find the third triangle on an edge.
  {
    std::map<std::pair<int, int>, int> count;
    for (size_t t = 0; t < triangles.size(); ++t) {
      const auto& tri = triangles[t];
      for (int c = 0; c < 3; ++c) {
        int a = tri[static_cast<size_t>(c)];
        int b = tri[static_cast<size_t>((c + 1) % 3)];
        if (a > b) std::swap(a, b);
        if (++count[{a, b}] > 2)
          throw ParseError("non-conforming edge (" + std::to_string(a) + "," +
                           std::to_string(b) + ") used by a third triangle",
                           tri_line[t]);
      }
    }
  }

  Mesh mesh;
  try {
    mesh = build_mesh(std::move(vertices), std::move(triangles));
  } catch (const Error& e) {
    throw ParseError(e.what(), in.last_line());
  }

  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.boundary[static_cast<size_t>(v)] != flags[static_cast<size_t>(v)])
      throw ParseError("boundary flag of vertex " + std::to_string(v) +
                       " disagrees with edge incidence", 2 + v);
  return mesh;
}

std::string serialize_mesh(const Mesh& mesh) {
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d %d\n", mesh.vertex_count(),
                mesh.triangle_count());
  out += buf;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Vec2 p = mesh.point(v);
    std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", p.x, p.y,
                  mesh.boundary[static_cast<size_t>(v)] ? 1 : 0);
    out += buf;
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "%d %d %d\n", t[0], t[1], t[2]);
    out += buf;
  }
  return out;
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str());
}

void save_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file: " + path);
  out << serialize_mesh(mesh);
}

MeshReport validate_mesh(const Mesh& mesh) {
  MeshReport r;
  r.domain_area = mesh.domain_area;
  r.h = mesh.h;

  double amin = M_PI, amax = 0.0;
  std::vector<double> areas;
  areas.reserve(mesh.triangles.size());
  bool non_obtuse = true;
  for (const auto& t : mesh.triangles) {
    const Vec2 a = mesh.point(t[0]);
    const Vec2 b = mesh.point(t[1]);
    const Vec2 c = mesh.point(t[2]);
    const double angs[3] = {corner_angle(a, b, c), corner_angle(b, c, a),
                            corner_angle(c, a, b)};
    for (double ang : angs) {
      amin = std::min(amin, ang);
      amax = std::max(amax, ang);
      if (ang > M_PI / 2.0 + kObtuseTolRad) non_obtuse = false;
    }
    areas.push_back(signed_area(a, b, c));
  }
  r.min_angle_deg = amin * 180.0 / M_PI;
  r.max_angle_deg = amax * 180.0 / M_PI;
  r.non_obtuse = non_obtuse;
  r.triangle_area_sum = pairwise_sum(areas);
  r.area_consistent = std::abs(r.triangle_area_sum - mesh.domain_area) <=
                      kAreaRelTol * std::abs(mesh.domain_area);

  bool conforming = true;
  bool flags_ok = true;
  try {
    const std::vector<MeshEdge> edges = collect_edges(mesh);
    double emin = std::numeric_limits<double>::max(), emax = 0.0;
    std::vector<char> derived(mesh.vertices.size(), 0);
    for (const MeshEdge& e : edges) {
      const double len = norm(mesh.point(e.b) - mesh.point(e.a));
      emin = std::min(emin, len);
      emax = std::max(emax, len);
      if (e.tri_count == 1) {
        derived[static_cast<size_t>(e.a)] = 1;
        derived[static_cast<size_t>(e.b)] = 1;
      }
    }
    r.min_edge = emin;
    r.max_edge = emax;
    r.edge_ratio = emax / emin;
    flags_ok = std::equal(derived.begin(), derived.end(), mesh.boundary.begin());
  } catch (const Error&) {
    conforming = false;
  }
  r.conforming = conforming;
  r.boundary_flags_consistent = flags_ok;
  return r;
}

std::string format_report(const MeshReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "angles [deg]      : %.6g .. %.6g\n"
                "edges             : %.6g .. %.6g (ratio %.6g)\n"
                "h                 : %.17g\n"
                "triangle area sum : %.17g  (domain %.17g)\n"
                "conforming        : %s\n"
                "non-obtuse        : %s\n"
                "boundary flags    : %s\n"
                "area consistent   : %s\n",
                r.min_angle_deg, r.max_angle_deg, r.min_edge, r.max_edge,
                r.edge_ratio, r.h, r.triangle_area_sum, r.domain_area,
                r.conforming ? "yes" : "NO", r.non_obtuse ? "yes" : "NO",
                r.boundary_flags_consistent ? "yes" : "NO",
                r.area_consistent ? "yes" : "NO");
  return buf;
}

} // namespace boxtherm
