#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "equiv/characters.hpp"
#include "equiv/closed_forms.hpp"
#include "equiv/jet.hpp"
#include "equiv/registry.hpp"
#include "equiv/report.hpp"
#include "equiv/suites.hpp"
#include "equiv/wick.hpp"

namespace py = pybind11;
using namespace equiv;

namespace {

CMatrix matrix_from_rows(const std::vector<std::vector<Cplx>>& rows) {
    int n = int(rows.size());
    CMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (int(rows[i].size()) != n) throw input_error("matrix rows must be square");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Permutation perm_from_images(const std::vector<int>& images) { return Permutation(images); }

MultiPermutation multiperm_from_images(const std::vector<std::vector<int>>& comps) {
    std::vector<Permutation> ps;
    for (const auto& c : comps) ps.push_back(Permutation(c));
    return MultiPermutation(ps);
}

TensorCov<Cplx> cov_from_factors(const std::vector<std::vector<std::vector<Cplx>>>& factors,
                                 Cplx scale) {
    std::vector<CMatrix> fs;
    for (const auto& f : factors) fs.push_back(matrix_from_rows(f));
    return TensorCov<Cplx>::from_factors(fs, scale);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "complex vs self-adjoint ensemble equivalences: permutation sums, pairing "
              "oracles, derivative jets, and closed forms";

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ArithmeticError);

    m.def("cycle_type", [](const std::vector<int>& images) {
        return cycle_type(perm_from_images(images)).parts();
    }, py::arg("images"), "cycle type of a permutation given as an image list");

    m.def("class_size", [](const std::vector<int>& parts) {
        return class_size(Partition(parts));
    }, py::arg("parts"));

    m.def("compose", [](const std::vector<int>& p, const std::vector<int>& q) {
        return (perm_from_images(p) * perm_from_images(q)).images();
    }, py::arg("p"), py::arg("q"), "(p*q)(i) = p(q(i))");

    m.def("sn_character", [](const std::vector<int>& lam, const std::vector<int>& mu) {
        return sn_character(Partition(lam), Partition(mu));
    }, py::arg("lam"), py::arg("mu"));

    m.def("gl_character", [](const std::vector<int>& lam, const std::vector<std::vector<Cplx>>& m_) {
        return gl_character(Partition(lam), matrix_from_rows(m_));
    }, py::arg("lam"), py::arg("matrix"));

    m.def("character_expectation",
          [](const std::vector<int>& r, const std::vector<std::vector<Cplx>>& P,
             const std::vector<std::vector<Cplx>>& Q) {
              CMatrix Pm = matrix_from_rows(P);
              return character_expectation(Partition(r), Pm, matrix_from_rows(Q), Pm.n);
          },
          py::arg("r"), py::arg("P"), py::arg("Q"));

    m.def("build_ck", [](int k, int N) {
        auto c = build_ck(k, N);
        return c.eigenvalues;
    }, py::arg("k"), py::arg("N"), "eigenvalues of the rigidity matrix C_k");

    m.def("verify_ck_residuals", [](int k, int N) {
        auto rep = verify_ck(build_ck(k, N));
        std::vector<double> res;
        for (const auto& c : rep.cases) res.push_back(c.abs_err);
        return res;
    }, py::arg("k"), py::arg("N"));

    m.def("dual_weight_sum",
          [](const std::vector<int>& sigma, const std::vector<std::vector<Cplx>>& P,
             const std::vector<std::vector<Cplx>>& Q) {
              return dual_weight_sum(perm_from_images(sigma), matrix_from_rows(P),
                                     matrix_from_rows(Q));
          },
          py::arg("sigma"), py::arg("P"), py::arg("Q"));

    m.def("cm_expect",
          [](const std::vector<int>& sigma, const std::vector<std::vector<Cplx>>& P,
             const std::vector<std::vector<Cplx>>& Q) {
              return cm_expect(perm_from_images(sigma), matrix_from_rows(P), matrix_from_rows(Q));
          },
          py::arg("sigma"), py::arg("P"), py::arg("Q"),
          "pairing-oracle Gaussian average of Tr_[sigma](Mdag M)");

    m.def("hm_expect",
          [](const std::vector<int>& sigma, const std::vector<std::vector<Cplx>>& P,
             const std::vector<std::vector<Cplx>>& Q) {
              return hm_expect(perm_from_images(sigma), matrix_from_rows(P), matrix_from_rows(Q));
          },
          py::arg("sigma"), py::arg("P"), py::arg("Q"),
          "trace-derivative route through the logarithmic auxiliary potential");

    m.def("tensor_dual_weight_sum",
          [](const std::vector<std::vector<int>>& bubble,
             const std::vector<std::vector<std::vector<Cplx>>>& factors, Cplx scale) {
              return tensor_dual_weight_sum(multiperm_from_images(bubble),
                                            cov_from_factors(factors, scale));
          },
          py::arg("bubble"), py::arg("factors"), py::arg("scale") = Cplx(1.0, 0.0));

    m.def("ct_expect",
          [](const std::vector<std::vector<int>>& bubble,
             const std::vector<std::vector<std::vector<Cplx>>>& factors, Cplx scale) {
              return ct_expect(multiperm_from_images(bubble), cov_from_factors(factors, scale));
          },
          py::arg("bubble"), py::arg("factors"), py::arg("scale") = Cplx(1.0, 0.0));

    m.def("quartic_cm_logz", &quartic_cm_logz, py::arg("g"), py::arg("N"));
    m.def("pillow_logz", &pillow_logz, py::arg("lam"), py::arg("N"));
    m.def("pillow_det", &pillow_det_dense, py::arg("lam"), py::arg("N"));
    m.def("rt_logz", &rt_logz, py::arg("lam"), py::arg("N"));
    m.def("st_logz", &st_logz, py::arg("lam"), py::arg("N"));
    m.def("st_det", &st_det, py::arg("lam"), py::arg("N"));
    m.def("catalan", &catalan, py::arg("m"));

    m.def("convergence_check",
          [](const std::vector<std::vector<Cplx>>& P, const std::vector<std::vector<Cplx>>& Q) {
              auto v = convergence_check({matrix_from_rows(P), matrix_from_rows(Q)});
              py::dict d;
              d["convergent"] = v.convergent;
              if (!v.convergent) {
                  d["witness_q"] = v.witness_q;
                  d["witness_p"] = v.witness_p;
              }
              return d;
          },
          py::arg("P"), py::arg("Q"));

    m.def("run_job", [](const std::string& job_json) {
        return report_to_json(run_job(parse_job(job_json)));
    }, py::arg("job_json"), "run a verification suite from a JSON job string");

    m.def("list_suites", [] {
        py::list out;
        for (const auto& s : suite_catalog()) {
            py::dict d;
            d["name"] = s.name;
            d["description"] = s.description;
            d["anchors"] = s.anchors;
            out.append(d);
        }
        return out;
    });
}
