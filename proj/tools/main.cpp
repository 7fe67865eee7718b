#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hullfilter/bench.hpp"
#include "hullfilter/cloud_io.hpp"
#include "hullfilter/extremes.hpp"
#include "hullfilter/generate.hpp"
#include "hullfilter/hull.hpp"
#include "hullfilter/polyhedron.hpp"

namespace hf = hullfilter;

namespace {

struct CloudArgs {
  std::string in_path;
  std::string dist = "uniform";
  std::size_t n = 1000;
  double rho = 0.0;
  std::uint64_t seed = 1;
};

void add_cloud_options(CLI::App* cmd, CloudArgs& args) {
  cmd->add_option("--in", args.in_path,
                  "Input cloud file ('-' reads xyz text from stdin); overrides "
                  "the generator flags");
  cmd->add_option("--dist", args.dist, "Distribution: uniform or sphere")
      ->check(CLI::IsMember({"uniform", "sphere"}));
  cmd->add_option("--n", args.n, "Point count");
  cmd->add_option("--rho", args.rho, "Sphere shell thickness in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", args.seed, "Generator seed");
}

hf::PointCloud load_cloud(const CloudArgs& args) {
  if (args.in_path == "-") return hf::read_cloud(std::cin, hf::CloudFormat::text);
  if (!args.in_path.empty()) return hf::read_cloud_file_auto(args.in_path);
  return hf::generate({hf::distribution_from_string(args.dist), args.n, args.rho,
                       args.seed});
}

hf::CloudFormat parse_format(const std::string& s) {
  return s == "txt" ? hf::CloudFormat::text : hf::CloudFormat::binary;
}

hf::IntersectBackend parse_backend(const std::string& s) {
  return s == "linear" ? hf::IntersectBackend::linear : hf::IntersectBackend::bvh;
}

std::string parse_finisher(const std::string& s) {
  if (s.empty() || s == "builtin") return {};
  if (s.rfind("exec:", 0) == 0) return s.substr(5);
  throw CLI::ValidationError("--finisher", "expected 'builtin' or 'exec:<command>'");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) seeds.push_back(std::stoull(item));
  if (seeds.empty()) throw CLI::ValidationError("--seeds", "no seeds given");
  return seeds;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoull(item));
  return out;
}

const char* path_name(hf::FilterPath p) {
  switch (p) {
    case hf::FilterPath::filtered: return "filtered";
    case hf::FilterPath::shadow: return "shadow";
    case hf::FilterPath::skipped: return "skipped";
  }
  return "?";
}

void print_stats(const hf::PipelineStats& st) {
  std::printf("points             %zu\n", st.input_points);
  std::printf("candidates         %zu\n", st.candidates);
  std::printf("discard_fraction   %.6f\n", st.discard_fraction);
  std::printf("filter_path        %s\n", path_name(st.path));
  std::printf("phase_extremes_ms  %.3f\n", double(st.phase_extremes_ns) * 1e-6);
  std::printf("phase_poly_ms      %.3f\n", double(st.phase_poly_ns) * 1e-6);
  std::printf("phase_classify_ms  %.3f\n", double(st.phase_classify_ns) * 1e-6);
  std::printf("phase_compact_ms   %.3f\n", double(st.phase_compact_ns) * 1e-6);
  if (st.phase_hull_ns)
    std::printf("phase_hull_ms      %.3f\n", double(st.phase_hull_ns) * 1e-6);
  std::printf("total_ms           %.3f\n", double(st.total_ns) * 1e-6);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3D convex-hull prefilter: extreme-point polyhedron, ray-cast "
               "classification, stream compaction, quickhull"};
  app.require_subcommand(1);

  // gen
  CloudArgs gen_args;
  std::string gen_out, gen_format = "bin";
  CLI::App* gen = app.add_subcommand("gen", "Generate a point cloud file");
  add_cloud_options(gen, gen_args);
  gen->add_option("--out", gen_out, "Output path")->required();
  gen->add_option("--format", gen_format, "bin or txt")
      ->check(CLI::IsMember({"bin", "txt"}));

  // filter
  CloudArgs filter_args;
  std::string filter_out, filter_format = "bin", filter_backend = "bvh";
  unsigned filter_threads = 0;
  CLI::App* filter = app.add_subcommand(
      "filter", "Run the prefilter and write the candidate cloud");
  add_cloud_options(filter, filter_args);
  filter->add_option("--out", filter_out, "Candidate cloud output path");
  filter->add_option("--format", filter_format, "bin or txt")
      ->check(CLI::IsMember({"bin", "txt"}));
  filter->add_option("--backend", filter_backend, "linear or bvh")
      ->check(CLI::IsMember({"linear", "bvh"}));
  filter->add_option("--threads", filter_threads, "Worker threads (0 = auto)");

  // hull
  CloudArgs hull_args;
  std::string hull_out, hull_emit = "off", hull_finisher = "builtin";
  bool hull_filtered = false;
  std::string hull_backend = "bvh";
  unsigned hull_threads = 0;
  CLI::App* hull = app.add_subcommand("hull", "Compute a convex hull");
  add_cloud_options(hull, hull_args);
  hull->add_option("--out", hull_out, "Output path (default: stdout)");
  hull->add_option("--emit", hull_emit,
                   "off = OFF mesh, indices = one hull vertex index per line")
      ->check(CLI::IsMember({"off", "indices"}));
  hull->add_flag("--filtered", hull_filtered, "Run the prefilter first");
  hull->add_option("--backend", hull_backend, "linear or bvh (with --filtered)")
      ->check(CLI::IsMember({"linear", "bvh"}));
  hull->add_option("--threads", hull_threads, "Worker threads (0 = auto)");
  hull->add_option("--finisher", hull_finisher,
                   "builtin or exec:<command> (with --filtered)");

  // bench
  CloudArgs bench_args;
  std::string bench_out, bench_backend = "bvh", bench_mode = "both";
  std::string bench_seeds = "1", bench_finisher = "builtin";
  unsigned bench_threads = 0;
  int bench_reps = 5;
  CLI::App* bench = app.add_subcommand("bench", "Benchmark hull computation");
  add_cloud_options(bench, bench_args);
  bench->add_option("--seeds", bench_seeds, "Comma-separated seed list");
  bench->add_option("--reps", bench_reps, "Repetitions per seed");
  bench->add_option("--threads", bench_threads, "Worker threads (0 = auto)");
  bench->add_option("--backend", bench_backend, "linear or bvh")
      ->check(CLI::IsMember({"linear", "bvh"}));
  bench->add_option("--mode", bench_mode, "filtered, unfiltered, or both")
      ->check(CLI::IsMember({"filtered", "unfiltered", "both"}));
  bench->add_option("--finisher", bench_finisher, "builtin or exec:<command>");
  bench->add_option("--out", bench_out, "CSV output path")->required();

  // sweep-rho
  hf::SweepRhoConfig rho_cfg;
  std::string rho_list = "0,0.25,0.5,1", rho_backend = "bvh";
  CLI::App* srho = app.add_subcommand("sweep-rho", "Sphere shell-thickness sweep");
  srho->add_option("--n", rho_cfg.n, "Point count");
  srho->add_option("--rhos", rho_list, "Comma-separated rho values");
  srho->add_option("--seed", rho_cfg.seed, "Seed");
  srho->add_option("--reps", rho_cfg.reps, "Repetitions");
  srho->add_option("--threads", rho_cfg.pipeline.threads, "Worker threads");
  srho->add_option("--backend", rho_backend, "linear or bvh")
      ->check(CLI::IsMember({"linear", "bvh"}));
  srho->add_option("--out", rho_cfg.csv_path, "CSV output path")->required();
  srho->add_option("--plot", rho_cfg.plot_path, "SVG plot output path");

  // sweep-faces
  hf::SweepFacesConfig faces_cfg;
  std::string faces_list = "24,192,1536,12288";
  CLI::App* sfaces =
      app.add_subcommand("sweep-faces", "Polyhedron face-count sweep");
  sfaces->add_option("--n", faces_cfg.n, "Point count");
  sfaces->add_option("--faces", faces_list, "Comma-separated face counts");
  sfaces->add_option("--seed", faces_cfg.seed, "Seed");
  sfaces->add_option("--reps", faces_cfg.reps, "Repetitions");
  sfaces->add_option("--threads", faces_cfg.threads, "Worker threads");
  sfaces->add_option("--out", faces_cfg.csv_path, "CSV output path")->required();
  sfaces->add_option("--plot", faces_cfg.plot_path, "SVG plot output path");

  // sweep-scale
  hf::SweepScaleConfig scale_cfg;
  std::string scale_sizes, scale_backend = "bvh";
  CLI::App* sscale = app.add_subcommand("sweep-scale", "Cloud-size sweep");
  sscale->add_option("--sizes", scale_sizes,
                     "Comma-separated point counts (default 2^16..2^22)");
  sscale->add_option("--seed", scale_cfg.seed, "Seed");
  sscale->add_option("--reps", scale_cfg.reps, "Repetitions");
  sscale->add_option("--threads", scale_cfg.pipeline.threads, "Worker threads");
  sscale->add_option("--backend", scale_backend, "linear or bvh")
      ->check(CLI::IsMember({"linear", "bvh"}));
  sscale->add_option("--out", scale_cfg.csv_path, "CSV output path")->required();
  sscale->add_option("--plot", scale_cfg.plot_path, "SVG plot output path");

  // dump-poly
  CloudArgs poly_args;
  std::string poly_out;
  CLI::App* dump = app.add_subcommand("dump-poly", "Dump the filtering polyhedron");
  add_cloud_options(dump, poly_args);
  dump->add_option("--out", poly_out, "OBJ output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      hf::write_cloud_file(load_cloud(gen_args), gen_out, parse_format(gen_format));
    } else if (*filter) {
      const hf::PointCloud cloud = load_cloud(filter_args);
      hf::PipelineConfig cfg;
      cfg.backend = parse_backend(filter_backend);
      cfg.threads = filter_threads;
      const hf::FilterResult res = hf::run_filter(cloud, cfg);
      if (!filter_out.empty())
        hf::write_cloud_file(res.candidates, filter_out, parse_format(filter_format));
      print_stats(res.stats);
    } else if (*hull) {
      const hf::PointCloud cloud = load_cloud(hull_args);
      hf::HullMesh mesh;
      if (hull_filtered) {
        hf::PipelineConfig cfg;
        cfg.backend = parse_backend(hull_backend);
        cfg.threads = hull_threads;
        cfg.finisher_command = parse_finisher(hull_finisher);
        cfg.build_index_map = true;
        hf::FilteredHullResult res = hf::filtered_hull(cloud, cfg);
        // Report hull vertices against the original input order.
        for (std::size_t& s : res.hull.source_index) s = res.candidate_to_input[s];
        mesh = std::move(res.hull);
        print_stats(res.stats);
      } else {
        mesh = hf::quickhull3d(cloud);
      }
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!hull_out.empty()) {
        file.open(hull_out);
        if (!file) throw std::runtime_error("cannot open " + hull_out);
        out = &file;
      }
      if (hull_emit == "off") {
        hf::write_off(mesh, *out);
      } else {
        for (std::size_t s : mesh.source_index) *out << s << '\n';
      }
    } else if (*bench) {
      hf::BenchConfig cfg;
      cfg.pipeline.backend = parse_backend(bench_backend);
      cfg.pipeline.threads = bench_threads;
      cfg.pipeline.finisher_command = parse_finisher(bench_finisher);
      cfg.reps = bench_reps;
      cfg.mode = bench_mode == "filtered"
                     ? hf::BenchMode::filtered
                     : bench_mode == "unfiltered" ? hf::BenchMode::unfiltered
                                                  : hf::BenchMode::both;
      const hf::GenSpec spec{hf::distribution_from_string(bench_args.dist),
                             bench_args.n, bench_args.rho, bench_args.seed};
      const auto records =
          hf::run_bench(spec, parse_seed_list(bench_seeds), cfg);
      hf::write_csv(records, bench_out);
      std::printf("wrote %zu records to %s\n", records.size(), bench_out.c_str());
    } else if (*srho) {
      rho_cfg.pipeline.backend = parse_backend(rho_backend);
      std::vector<double> rhos;
      std::stringstream ss(rho_list);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) rhos.push_back(std::stod(item));
      rho_cfg.rhos = rhos;
      hf::sweep_rho(rho_cfg);
      std::printf("wrote %s\n", rho_cfg.csv_path.c_str());
    } else if (*sfaces) {
      std::vector<int> counts;
      for (std::size_t v : parse_size_list(faces_list)) counts.push_back(int(v));
      if (!counts.empty()) faces_cfg.face_counts = counts;
      hf::sweep_faces(faces_cfg);
      std::printf("wrote %s\n", faces_cfg.csv_path.c_str());
    } else if (*sscale) {
      scale_cfg.pipeline.backend = parse_backend(scale_backend);
      scale_cfg.sizes = parse_size_list(scale_sizes);
      hf::sweep_scale(scale_cfg);
      std::printf("wrote %s\n", scale_cfg.csv_path.c_str());
    } else if (*dump) {
      const hf::PointCloud cloud = load_cloud(poly_args);
      const hf::AxisExtremes ext = hf::minmax_reduce(cloud);
      const hf::CornerPoints corners =
          hf::nearest_to_corners(cloud, hf::bounding_box(ext));
      const hf::FilterPolyhedron poly = hf::build_polyhedron(ext, corners);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!poly_out.empty()) {
        file.open(poly_out);
        if (!file) throw std::runtime_error("cannot open " + poly_out);
        out = &file;
      }
      hf::dump_obj(poly, *out);
      std::fprintf(stderr, "faces=%zu star_shaped=%d volume=%.9g\n",
                   poly.faces.size(), int(poly.star_shaped), poly.volume());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
