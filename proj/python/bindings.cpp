#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavesyn/best_basis.hpp"
#include "wavesyn/error_metrics.hpp"
#include "wavesyn/greedy.hpp"
#include "wavesyn/haar_dp.hpp"
#include "wavesyn/image2d.hpp"
#include "wavesyn/oracle.hpp"
#include "wavesyn/representation.hpp"
#include "wavesyn/signal_io.hpp"
#include "wavesyn/transform.hpp"

namespace py = pybind11;
using namespace wavesyn;

namespace {

py::dict rep_to_dict(const Representation& rep) {
    py::dict d;
    d["n"] = rep.n;
    d["basis"] = rep.basis;
    d["scaling"] = to_string(rep.scaling);
    d["p"] = rep.p;
    d["budget"] = rep.budget;
    py::list terms;
    for (const auto& [idx, v] : rep.terms)
        terms.append(py::make_tuple(idx.flat, v));
    d["terms"] = terms;
    d["error"] = rep.reported_error;
    return d;
}

std::vector<double> rep_reconstruct(const Representation& rep) {
    return reconstruct(rep, FilterBank::by_name(rep.basis));
}

const Weights* opt_weights(const std::optional<std::vector<double>>& w,
                           Weights& storage) {
    if (!w) return nullptr;
    storage = Weights::make(*w);
    return &storage;
}

}  // namespace

PYBIND11_MODULE(_wavesyn, m) {
    m.doc() = "Sparse wavelet representations under lp norms";

    py::class_<Representation>(m, "Representation")
        .def_property_readonly("n", [](const Representation& r) { return r.n; })
        .def_property_readonly("basis",
                               [](const Representation& r) { return r.basis; })
        .def_property_readonly("budget",
                               [](const Representation& r) { return r.budget; })
        .def_property_readonly(
            "error", [](const Representation& r) { return r.reported_error; })
        .def_property_readonly("terms",
                               [](const Representation& r) {
                                   std::vector<std::pair<std::int64_t, double>> t;
                                   for (const auto& [idx, v] : r.terms)
                                       t.emplace_back(idx.flat, v);
                                   return t;
                               })
        .def("reconstruct", &rep_reconstruct)
        .def("to_dict", &rep_to_dict);

    m.attr("INF") = kInf;

    m.def(
        "transform",
        [](const std::vector<double>& f, const std::string& basis,
           const std::string& scaling) {
            return cascade_forward(f, FilterBank::by_name(basis),
                                   scaling_from_string(scaling))
                .values;
        },
        py::arg("f"), py::arg("basis") = "haar",
        py::arg("scaling") = "orthonormal");

    m.def(
        "inverse",
        [](const std::vector<double>& values, const std::string& basis,
           const std::string& scaling) {
            CoefficientVector c;
            c.n = static_cast<std::int64_t>(values.size());
            c.scaling = scaling_from_string(scaling);
            c.values = values;
            return cascade_inverse(c, FilterBank::by_name(basis));
        },
        py::arg("values"), py::arg("basis") = "haar",
        py::arg("scaling") = "orthonormal");

    m.def(
        "lp_error",
        [](const std::vector<double>& f, const std::vector<double>& g, double p,
           const std::optional<std::vector<double>>& weights) {
            Weights storage;
            return lp_error(f, g, p, opt_weights(weights, storage));
        },
        py::arg("f"), py::arg("g"), py::arg("p") = 2.0,
        py::arg("weights") = py::none());

    m.def(
        "greedy",
        [](const std::vector<double>& f, int B, double p,
           const std::string& basis) {
            return greedy_select(f, B, p, FilterBank::by_name(basis));
        },
        py::arg("f"), py::arg("B"), py::arg("p") = 2.0,
        py::arg("basis") = "haar");

    m.def(
        "universal",
        [](const std::vector<double>& f, int B, const std::string& basis) {
            return universal_select(f, B, FilterBank::by_name(basis));
        },
        py::arg("f"), py::arg("B"), py::arg("basis") = "haar");

    m.def(
        "fptas",
        [](const std::vector<double>& f, int B, double p, double eps,
           const std::optional<std::vector<double>>& weights) {
            Weights storage;
            return fptas(f, B, p, eps, opt_weights(weights, storage));
        },
        py::arg("f"), py::arg("B"), py::arg("p") = 2.0, py::arg("eps") = 0.1,
        py::arg("weights") = py::none());

    m.def(
        "hybrid",
        [](const std::vector<double>& f, int B, double p, double eps,
           const std::optional<std::vector<double>>& weights) {
            Weights storage;
            return hybrid(f, B, p, eps, opt_weights(weights, storage));
        },
        py::arg("f"), py::arg("B"), py::arg("p") = 2.0, py::arg("eps") = 0.1,
        py::arg("weights") = py::none());

    m.def(
        "rest_optimal",
        [](const std::vector<double>& f, int B, double p,
           const std::optional<std::vector<double>>& weights) {
            Weights storage;
            return rest_optimal(f, B, p, opt_weights(weights, storage));
        },
        py::arg("f"), py::arg("B"), py::arg("p") = 2.0,
        py::arg("weights") = py::none());

    m.def(
        "oracle",
        [](const std::vector<double>& f, int B, double p, bool restricted,
           const std::string& basis) {
            const FilterBank fb = FilterBank::by_name(basis);
            const OracleResult res = restricted
                                         ? brute_force_restricted(f, B, p, fb)
                                         : brute_force_unrestricted(f, B, p, fb);
            return res.error;
        },
        py::arg("f"), py::arg("B"), py::arg("p") = 2.0,
        py::arg("restricted") = false, py::arg("basis") = "haar");

    m.def(
        "best_basis",
        [](const std::vector<double>& f, int B, double p,
           std::int64_t min_block) {
            const CutSolution cut =
                best_basis_select(f, B, p, inner_greedy(p), min_block);
            py::dict d;
            d["error"] = cut.total_error;
            d["reconstruction"] = cut.reconstruction;
            py::list blocks;
            for (const BlockPick& b : cut.blocks)
                blocks.append(py::make_tuple(b.j, b.shift, b.budget, b.error));
            d["blocks"] = blocks;
            return d;
        },
        py::arg("f"), py::arg("B"), py::arg("p") = 2.0,
        py::arg("min_block") = 2);

    m.def("gen_saw", &gen_saw, py::arg("n") = 2048, py::arg("period") = 256);

    m.def(
        "greedy2d",
        [](const std::vector<std::vector<double>>& pixels, std::int64_t B,
           double p) {
            Image img;
            img.height = static_cast<std::int64_t>(pixels.size());
            img.width = img.height ? static_cast<std::int64_t>(pixels[0].size())
                                   : 0;
            for (const auto& row : pixels) {
                if (static_cast<std::int64_t>(row.size()) != img.width)
                    throw std::invalid_argument("ragged pixel rows");
                img.pixels.insert(img.pixels.end(), row.begin(), row.end());
            }
            const Greedy2DResult res = greedy2d(img, B, p, FilterBank::haar());
            std::vector<std::vector<double>> recon(img.height);
            for (std::int64_t r = 0; r < img.height; ++r)
                recon[r].assign(
                    res.reconstruction.pixels.begin() + r * img.width,
                    res.reconstruction.pixels.begin() + (r + 1) * img.width);
            return py::make_tuple(res.error, recon);
        },
        py::arg("pixels"), py::arg("B"), py::arg("p") = 2.0);
}
