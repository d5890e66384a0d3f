#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ucslab/driver.hpp"
#include "ucslab/report.hpp"

namespace py = pybind11;
using namespace ucslab;

namespace {

Family make_family(const std::vector<Mask>& members, int n) {
  return Family(GroundSet(n), members);
}

}  // namespace

PYBIND11_MODULE(_ucslab, m) {
  m.doc() = "union-closed family enumeration and separation analysis";

  m.def(
      "union_closure",
      [](const std::vector<Mask>& seeds, int n) {
        return union_closure(seeds, GroundSet(n)).members();
      },
      py::arg("seeds"), py::arg("n"));

  m.def(
      "is_union_closed",
      [](const std::vector<Mask>& members, int n) {
        std::vector<Mask> sorted = members;
        std::sort(sorted.begin(), sorted.end());
        return is_union_closed(sorted, GroundSet(n));
      },
      py::arg("members"), py::arg("n"));

  m.def(
      "is_separated",
      [](const std::vector<Mask>& members, int n, int k, int l) {
        return is_separated(make_family(members, n), SeparationParams(k, l));
      },
      py::arg("members"), py::arg("n"), py::arg("k"), py::arg("l"));

  m.def(
      "is_weakly_separated",
      [](const std::vector<Mask>& members, int n, int k, int l) {
        return is_weakly_separated(make_family(members, n), SeparationParams(k, l));
      },
      py::arg("members"), py::arg("n"), py::arg("k"), py::arg("l"));

  m.def(
      "cover_count",
      [](const std::vector<Mask>& members, int n, Mask s, int l) {
        return cover_count(make_family(members, n), s, l);
      },
      py::arg("members"), py::arg("n"), py::arg("s"), py::arg("l"));

  m.def(
      "best_cover",
      [](const std::vector<Mask>& members, int n, int k, int l) {
        return best_cover(make_family(members, n), SeparationParams(k, l));
      },
      py::arg("members"), py::arg("n"), py::arg("k"), py::arg("l"));

  m.def(
      "max_frequency",
      [](const std::vector<Mask>& members, int n) {
        return max_frequency(make_family(members, n));
      },
      py::arg("members"), py::arg("n"));

  m.def(
      "conjecture_bound",
      [](int k, int l) {
        const ExactFraction b = conjecture_bound(SeparationParams(k, l));
        return std::make_pair(b.num, b.den);
      },
      py::arg("k"), py::arg("l"));

  m.def("binomial_tail_sum", &binomial_tail_sum, py::arg("k"), py::arg("l"));

  m.def(
      "enumerate_families",
      [](int n, const std::string& strategy) {
        std::vector<std::vector<Mask>> out;
        for (const Family& f : enumerate_families(n, strategy_from_name(strategy)))
          out.push_back(f.members());
        return out;
      },
      py::arg("n"), py::arg("strategy") = "recursive");

  m.def(
      "canonical_form",
      [](const std::vector<Mask>& members, int n) {
        const auto c = canonical_form(make_family(members, n));
        return std::make_pair(c.representative.members(), c.orbit_size);
      },
      py::arg("members"), py::arg("n"));

  m.def(
      "enumerate_canonical",
      [](int n) {
        std::vector<std::pair<std::vector<Mask>, std::uint64_t>> out;
        for (const auto& c : enumerate_canonical(n))
          out.emplace_back(c.representative.members(), c.orbit_size);
        return out;
      },
      py::arg("n"));

  // reports cross as json strings; the python package decodes them
  m.def(
      "empirical_constant_json",
      [](int n, int k, int l, const std::string& cls, int workers) {
        const FamilyClassSelector sel{family_class_from_name(cls), SeparationParams(k, l)};
        return to_json(run_constant_parallel(n, sel, workers)).dump();
      },
      py::arg("n"), py::arg("k"), py::arg("l"), py::arg("cls") = "all",
      py::arg("workers") = 1);

  m.def(
      "verify_conjecture_json",
      [](int n, int k, int l, const std::string& variant) {
        return to_json(verify_conjecture(n, SeparationParams(k, l), variant_from_name(variant)))
            .dump();
      },
      py::arg("n"), py::arg("k"), py::arg("l"), py::arg("variant") = "standard");

  m.def(
      "audit_binomial_json", [](int max_k) { return to_json(audit_binomial(max_k)).dump(); },
      py::arg("max_k") = 30);

  m.def(
      "classify_all",
      [](int n) {
        std::vector<std::tuple<int, int, std::uint64_t, std::uint64_t, std::uint64_t>> out;
        for (const auto& row : classify_all(n))
          out.emplace_back(row.k, row.l, row.separated, row.weakly_separated, row.total);
        return out;
      },
      py::arg("n"));

  m.def(
      "derive_disjoint_subfamily",
      [](const std::vector<Mask>& members, int n, Mask s, int l) {
        const auto res = derive_disjoint_subfamily(make_family(members, n), s, l);
        py::dict out;
        out["valid"] = res.valid;
        out["family"] = res.family ? py::cast(res.family->members()) : py::none();
        out["remainder_n"] = res.remainder_n;
        out["size_b"] = res.size_b;
        out["size_b_prime"] = res.size_b_prime;
        out["size_a_prime"] = res.size_a_prime;
        return out;
      },
      py::arg("members"), py::arg("n"), py::arg("s"), py::arg("l") = 1);

  m.def(
      "derive_quotient_subfamily",
      [](const std::vector<Mask>& members, int n, Mask s) {
        return derive_quotient_subfamily(make_family(members, n), s).members();
      },
      py::arg("members"), py::arg("n"), py::arg("s"));

  py::register_exception<EmptyClassError>(m, "EmptyClassError", PyExc_ValueError);
}
