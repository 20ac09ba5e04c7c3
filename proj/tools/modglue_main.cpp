// Command-line front end: generate corpus lattices and systems, check files,
// dissect, glue, run the round trips, search for isomorphisms, emit DOT.
//
// Exit codes: 0 success/valid, 1 invalid input data (axiom failure, not
// modular, not isomorphic), 2 usage or parse error, 3 internal theorem
// violation (a bug in the library, never a data condition).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "modglue/modglue.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw modglue::ParseError(0, "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

void print_lattice_report(const modglue::FiniteLattice& L) {
  const auto p = modglue::complemented_profile(L);
  std::cout << "lattice: " << L.size() << " elements, " << L.covers().size() << " covers\n"
            << "bottom=" << L.bottom() << " top=" << L.top() << "\n"
            << "modular: " << yesno(modglue::is_modular(L)) << "\n"
            << "top is join of atoms:    " << yesno(p.top_is_join_of_atoms) << "\n"
            << "bottom is meet of coatoms: " << yesno(p.bottom_is_meet_of_coatoms) << "\n"
            << "complemented:            " << yesno(p.complemented) << "\n"
            << "relatively complemented: " << yesno(p.relatively_complemented) << "\n"
            << "atomistic:               " << yesno(p.atomistic) << "\n"
            << "coatomistic:             " << yesno(p.coatomistic) << "\n";
}

int print_mcs_report(const modglue::McsValidation& v) {
  std::cout << "axioms MC1-MC8.1: " << (v.valid() ? "pass" : "FAIL") << "\n";
  if (!v.valid()) std::cout << v.report.str();
  std::cout << "monotone (MC8.2): " << yesno(v.monotone()) << "\n";
  if (!v.monotone()) std::cout << v.monotony.str();
  return v.valid() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite modular lattices: gluing, dissection, and round trips"};
  app.require_subcommand(1);

  std::string spec_text, file1, file2;
  std::uint64_t seed = 1;
  int max_size = 64;
  bool with_blocks = false;

  auto* gen = app.add_subcommand("gen", "generate a lattice (or system) from a spec");
  gen->add_option("spec", spec_text,
                  "e.g. chain(4), boolean(3), diamond(5), product(3,4), divisor(60), "
                  "downset_random_poset(6), subspace(2,3), stacked(3,3), nonmonotone_example")
      ->required();
  gen->add_option("--seed", seed, "seed for randomized kinds");
  gen->add_option("--max-size", max_size, "element-count cap");

  auto* check = app.add_subcommand("check", "validate a lattice or system file");
  check->add_option("file", file1)->required();

  auto* dis = app.add_subcommand("dissect", "dissect a modular lattice into its block system");
  dis->add_option("file", file1)->required();

  auto* glu = app.add_subcommand("glue", "glue a system file into its sum lattice");
  glu->add_option("file", file1)->required();

  auto* rt = app.add_subcommand("roundtrip", "dissect-then-glue a lattice, or glue-then-dissect "
                                             "a system, and verify the canonical isomorphism");
  rt->add_option("file", file1)->required();

  auto* iso = app.add_subcommand("iso", "search for an isomorphism between two files");
  iso->add_option("file1", file1)->required();
  iso->add_option("file2", file2)->required();

  auto* dot = app.add_subcommand("dot", "emit the Hasse diagram as DOT");
  dot->add_option("file", file1)->required();
  dot->add_flag("--blocks", with_blocks, "cluster the diagram by dissection blocks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  using namespace modglue;
  try {
    if (gen->parsed()) {
      GenSpec spec = GenSpec::parse(spec_text);
      spec.seed = seed;
      spec.max_size = max_size;
      if (spec.kind == "nonmonotone_example" || spec.kind == "nonmonotone")
        std::cout << serialize_mcs(gen_mcs(spec));
      else
        std::cout << serialize_lattice(gen_lattice(spec));
      return 0;
    }
    if (check->parsed()) {
      const std::string text = read_file(file1);
      if (detect_kind(text) == FileKind::lattice) {
        print_lattice_report(parse_lattice(text));
        return 0;
      }
      return print_mcs_report(parse_mcs(text).validation);
    }
    if (dis->parsed()) {
      std::cout << serialize_mcs(dissect(parse_lattice(read_file(file1))).mcs);
      return 0;
    }
    if (glu->parsed()) {
      std::cout << serialize_lattice(glue(parse_mcs(read_file(file1)).system).lattice);
      return 0;
    }
    if (rt->parsed()) {
      const std::string text = read_file(file1);
      if (detect_kind(text) == FileKind::lattice) {
        const auto r = glue_of_dissection(parse_lattice(text));
        std::cout << "host: " << r.dissection.host.size() << " elements\n"
                  << "blocks: " << r.dissection.blocks.size() << "\n"
                  << "sum: " << r.sum.lattice.size() << " elements\n"
                  << "isomorphism verified: yes\n";
      } else {
        const auto parsed = parse_mcs(text);
        const auto r = dissection_of_glue(parsed.system);
        std::cout << "skeleton: " << parsed.system.skeleton.size() << " elements\n"
                  << "sum: " << r.sum.lattice.size() << " elements\n"
                  << "blocks of sum: " << r.dissection.blocks.size() << "\n"
                  << "isomorphism verified: yes\n";
      }
      return 0;
    }
    if (iso->parsed()) {
      const std::string t1 = read_file(file1), t2 = read_file(file2);
      if (detect_kind(t1) != detect_kind(t2)) {
        std::cerr << "error: cannot compare a lattice file with a system file\n";
        return 2;
      }
      if (detect_kind(t1) == FileKind::lattice) {
        const auto L1 = parse_lattice(t1), L2 = parse_lattice(t2);
        if (auto w = lattice_isomorphism(L1, L2)) {
          std::cout << "isomorphic\n";
          for (Elem a = 0; a < L1.size(); ++a) std::cout << a << " -> " << w->map[a] << "\n";
          return 0;
        }
      } else {
        const auto C1 = parse_mcs(t1).system, C2 = parse_mcs(t2).system;
        if (auto w = mcs_isomorphic(C1, C2)) {
          std::cout << "isomorphic\n";
          for (int x = 0; x < C1.skeleton.size(); ++x)
            std::cout << "block " << x << " -> " << w->skeleton_map[x] << "\n";
          return 0;
        }
      }
      std::cout << "not isomorphic\n";
      return 1;
    }
    if (dot->parsed()) {
      const auto L = parse_lattice(read_file(file1));
      if (with_blocks) {
        const auto D = dissect(L);
        std::cout << export_dot(L, &D);
      } else {
        std::cout << export_dot(L);
      }
      return 0;
    }
  } catch (const InternalTheoremViolation& e) {
    std::cerr << "internal theorem violation: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownKind& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
