#include "hullfilter/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hullfilter/parallel.hpp"
#include "hullfilter/plot.hpp"
#include "hullfilter/polyhedron.hpp"
#include "hullfilter/raycast.hpp"

namespace hullfilter {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t median(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v.empty() ? 0 : v[v.size() / 2];
}

const char* kHeader =
    "distribution,n,rho,seed,backend,threads,phase_extremes_ns,phase_poly_ns,"
    "phase_classify_ns,phase_compact_ns,phase_hull_ns,total_ns,candidates,"
    "discard_fraction,hull_vertices,hull_facets";

std::string backend_name(IntersectBackend b) {
  return b == IntersectBackend::linear ? "linear" : "bvh";
}

BenchRecord base_record(const GenSpec& spec, unsigned threads) {
  BenchRecord r;
  r.distribution = to_string(spec.dist);
  r.n = spec.n;
  r.rho = spec.dist == Distribution::sphere ? spec.rho : 0.0;
  r.seed = spec.seed;
  r.threads = threads ? threads : default_threads();
  return r;
}

struct PhaseSamples {
  std::vector<std::uint64_t> extremes, poly, classify, compact, hull, total;

  void add(const PipelineStats& st) {
    extremes.push_back(st.phase_extremes_ns);
    poly.push_back(st.phase_poly_ns);
    classify.push_back(st.phase_classify_ns);
    compact.push_back(st.phase_compact_ns);
    hull.push_back(st.phase_hull_ns);
    total.push_back(st.total_ns);
  }

  void medians_into(BenchRecord& r) const {
    r.phase_extremes_ns = median(extremes);
    r.phase_poly_ns = median(poly);
    r.phase_classify_ns = median(classify);
    r.phase_compact_ns = median(compact);
    r.phase_hull_ns = median(hull);
    r.total_ns = median(total);
  }
};

}  // namespace

void write_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const bool with_faces =
      std::any_of(records.begin(), records.end(),
                  [](const BenchRecord& r) { return r.faces >= 0; });
  out << kHeader;
  if (with_faces) out << ",faces";
  out << '\n';
  char buf[512];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof buf,
                  "%s,%zu,%.9g,%llu,%s,%u,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%.9g,"
                  "%llu,%llu",
                  r.distribution.c_str(), r.n, r.rho,
                  (unsigned long long)r.seed, r.backend.c_str(), r.threads,
                  (unsigned long long)r.phase_extremes_ns,
                  (unsigned long long)r.phase_poly_ns,
                  (unsigned long long)r.phase_classify_ns,
                  (unsigned long long)r.phase_compact_ns,
                  (unsigned long long)r.phase_hull_ns,
                  (unsigned long long)r.total_ns, (unsigned long long)r.candidates,
                  r.discard_fraction, (unsigned long long)r.hull_vertices,
                  (unsigned long long)r.hull_facets);
    out << buf;
    if (with_faces) out << ',' << r.faces;
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<BenchRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  const bool with_faces = line.find(",faces") != std::string::npos;

  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() < 16) throw std::runtime_error("short csv row: " + line);
    BenchRecord r;
    r.distribution = f[0];
    r.n = std::stoull(f[1]);
    r.rho = std::stod(f[2]);
    r.seed = std::stoull(f[3]);
    r.backend = f[4];
    r.threads = unsigned(std::stoul(f[5]));
    r.phase_extremes_ns = std::stoull(f[6]);
    r.phase_poly_ns = std::stoull(f[7]);
    r.phase_classify_ns = std::stoull(f[8]);
    r.phase_compact_ns = std::stoull(f[9]);
    r.phase_hull_ns = std::stoull(f[10]);
    r.total_ns = std::stoull(f[11]);
    r.candidates = std::stoull(f[12]);
    r.discard_fraction = std::stod(f[13]);
    r.hull_vertices = std::stoull(f[14]);
    r.hull_facets = std::stoull(f[15]);
    if (with_faces && f.size() > 16) r.faces = std::stoll(f[16]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<BenchRecord> run_bench(const GenSpec& base,
                                   const std::vector<std::uint64_t>& seeds,
                                   const BenchConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("reps must be >= 1");
  std::vector<BenchRecord> records;

  for (std::uint64_t seed : seeds) {
    GenSpec spec = base;
    spec.seed = seed;
    const PointCloud cloud = generate(spec);

    if (cfg.mode != BenchMode::unfiltered) {
      PhaseSamples samples;
      BenchRecord r = base_record(spec, cfg.pipeline.threads);
      r.backend = backend_name(cfg.pipeline.backend);
      if (cfg.warmup) (void)filtered_hull(cloud, cfg.pipeline);
      for (int rep = 0; rep < cfg.reps; ++rep) {
        const FilteredHullResult res = filtered_hull(cloud, cfg.pipeline);
        samples.add(res.stats);
        r.candidates = res.stats.candidates;
        r.discard_fraction = res.stats.discard_fraction;
        r.hull_vertices = res.hull.vertices.size();
        r.hull_facets = res.hull.facets.size();
      }
      samples.medians_into(r);
      records.push_back(std::move(r));
    }

    if (cfg.mode != BenchMode::filtered) {
      PhaseSamples samples;
      BenchRecord r = base_record(spec, cfg.pipeline.threads);
      r.backend = "unfiltered";
      r.candidates = cloud.size();
      r.discard_fraction = 0.0;
      if (cfg.warmup) (void)quickhull3d(cloud);
      for (int rep = 0; rep < cfg.reps; ++rep) {
        const auto t0 = Clock::now();
        const HullMesh hull = quickhull3d(cloud);
        const auto ns = std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          Clock::now() - t0)
                                          .count());
        PipelineStats st;
        st.phase_hull_ns = ns;
        st.total_ns = ns;
        samples.add(st);
        r.hull_vertices = hull.vertices.size();
        r.hull_facets = hull.facets.size();
      }
      samples.medians_into(r);
      records.push_back(std::move(r));
    }
  }
  return records;
}

std::vector<BenchRecord> sweep_rho(const SweepRhoConfig& cfg) {
  std::vector<BenchRecord> records;
  for (double rho : cfg.rhos) {
    GenSpec spec{Distribution::sphere, cfg.n, rho, cfg.seed};
    BenchConfig bench;
    bench.pipeline = cfg.pipeline;
    bench.mode = BenchMode::both;
    bench.reps = cfg.reps;
    const std::vector<BenchRecord> rows = run_bench(spec, {cfg.seed}, bench);
    records.insert(records.end(), rows.begin(), rows.end());
  }
  if (!cfg.csv_path.empty()) write_csv(records, cfg.csv_path);
  if (!cfg.plot_path.empty()) {
    PlotSeries filtered{"filtered total", {}, {}};
    PlotSeries plain{"unfiltered hull", {}, {}};
    for (const BenchRecord& r : records) {
      PlotSeries& s = r.backend == "unfiltered" ? plain : filtered;
      s.x.push_back(r.rho);
      s.y.push_back(double(r.total_ns) * 1e-6);
    }
    write_svg_plot({filtered, plain},
                   {"Hull time vs sphere shell thickness", "rho", "time (ms)", false,
                    false},
                   cfg.plot_path);
  }
  return records;
}

std::vector<BenchRecord> sweep_faces(const SweepFacesConfig& cfg) {
  const PointCloud cloud =
      generate({Distribution::uniform, cfg.n, 0.0, cfg.seed});
  std::vector<BenchRecord> records;

  for (int fc : cfg.face_counts) {
    const FilterPolyhedron poly = synth_polyhedron(fc, cfg.seed);
    for (IntersectBackend backend : {IntersectBackend::linear, IntersectBackend::bvh}) {
      BenchRecord r = base_record({Distribution::uniform, cfg.n, 0.0, cfg.seed},
                                  cfg.threads);
      r.backend = backend_name(backend);
      r.faces = std::int64_t(poly.faces.size());
      const ClassifyOptions copt{backend, 8192, cfg.threads};
      (void)classify(cloud, poly, copt);  // warmup
      std::vector<std::uint64_t> times;
      CandidateMask mask;
      for (int rep = 0; rep < cfg.reps; ++rep) {
        const auto t0 = Clock::now();
        mask = classify(cloud, poly, copt);
        times.push_back(std::uint64_t(
            std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0)
                .count()));
      }
      r.phase_classify_ns = median(times);
      r.total_ns = r.phase_classify_ns;
      r.candidates = mask.candidate_count();
      r.discard_fraction = cfg.n ? 1.0 - double(r.candidates) / double(cfg.n) : 0.0;
      records.push_back(std::move(r));
    }
  }
  if (!cfg.csv_path.empty()) write_csv(records, cfg.csv_path);
  if (!cfg.plot_path.empty()) {
    PlotSeries lin{"linear", {}, {}}, bvh{"bvh", {}, {}};
    for (const BenchRecord& r : records) {
      PlotSeries& s = r.backend == "linear" ? lin : bvh;
      s.x.push_back(double(r.faces));
      s.y.push_back(double(r.phase_classify_ns) * 1e-6);
    }
    write_svg_plot({lin, bvh},
                   {"Classification time vs polyhedron faces", "faces", "time (ms)",
                    true, true},
                   cfg.plot_path);
  }
  return records;
}

std::vector<BenchRecord> sweep_scale(const SweepScaleConfig& cfg) {
  std::vector<std::size_t> sizes = cfg.sizes;
  if (sizes.empty())
    for (int p = 16; p <= 22; ++p) sizes.push_back(std::size_t(1) << p);

  std::vector<BenchRecord> records;
  for (std::size_t n : sizes) {
    const GenSpec spec{Distribution::uniform, n, 0.0, cfg.seed};
    const PointCloud cloud = generate(spec);
    BenchRecord r = base_record(spec, cfg.pipeline.threads);
    r.backend = backend_name(cfg.pipeline.backend);
    (void)run_filter(cloud, cfg.pipeline);  // warmup
    PhaseSamples samples;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      const FilterResult res = run_filter(cloud, cfg.pipeline);
      samples.add(res.stats);
      r.candidates = res.stats.candidates;
      r.discard_fraction = res.stats.discard_fraction;
    }
    samples.medians_into(r);
    records.push_back(std::move(r));
  }
  if (!cfg.csv_path.empty()) write_csv(records, cfg.csv_path);
  if (!cfg.plot_path.empty()) {
    PlotSeries classify_series{"classify", {}, {}};
    for (const BenchRecord& r : records) {
      classify_series.x.push_back(double(r.n));
      classify_series.y.push_back(double(r.phase_classify_ns) * 1e-6);
    }
    write_svg_plot({classify_series},
                   {"Classification time vs cloud size", "points", "time (ms)", true,
                    true},
                   cfg.plot_path);
  }
  return records;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope needs matched series of >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log2(x[i]), ly = std::log2(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hullfilter
