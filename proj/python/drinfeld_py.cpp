#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drinfeld/certify.hpp"

namespace py = pybind11;
using namespace drinfeld;

namespace {

py::object to_py_int(const Integer& x) { return py::int_(py::str(x.str())); }
Integer from_py_int(const py::int_& x) { return Integer(py::str(py::handle(x)).cast<std::string>()); }

// Every JSON record crosses the boundary as a Python object through json.loads.
py::object as_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-level computations on the Drinfeld symmetric space";

    py::register_exception<Error>(m, "Error");
    py::register_exception<PrecisionError>(m, "PrecisionError");
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded");

    m.attr("RESIDUE_SIGN") = kResidueSign;

    py::class_<FieldDesc>(m, "FieldDesc")
        .def(py::init([](std::uint64_t p, int e, int f, int N) { return FieldDesc{p, e, f, N}; }), py::arg("p"),
             py::arg("e") = 1, py::arg("f") = 1, py::arg("N") = 20)
        .def_readonly("p", &FieldDesc::p)
        .def_readonly("e", &FieldDesc::e)
        .def_readonly("f", &FieldDesc::f)
        .def_readonly("N", &FieldDesc::N);

    py::class_<FieldElem>(m, "FieldElem")
        .def("valuation",
             [](const FieldElem& x) {
                 Valuation v = x.valuation();
                 return py::make_tuple(v.pi_units, v.e, v.exact());
             },
             "(pi_units, e, exact)")
        .def("congruent", &FieldElem::congruent)
        .def("pow", &FieldElem::pow)
        .def("json", [](const FieldElem& x) { return as_py(to_json(x)); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def("__repr__", &FieldElem::to_string);

    py::class_<Field>(m, "Field")
        .def(py::init<const FieldDesc&>())
        .def(py::init([](std::uint64_t p, int e, int f, int N) { return Field(FieldDesc{p, e, f, N}); }),
             py::arg("p"), py::arg("e") = 1, py::arg("f") = 1, py::arg("N") = 20)
        .def_property_readonly("desc", &Field::desc)
        .def("one", &Field::one)
        .def("zero", &Field::zero)
        .def("pi", &Field::pi)
        .def("omega", &Field::omega)
        .def("from_int", &Field::from_int);

    py::class_<ProjPoint>(m, "ProjPoint")
        .def(py::init([](std::uint64_t p, int level, std::vector<std::uint64_t> rep) { return ProjPoint(p, level, rep); }),
             py::arg("p"), py::arg("level"), py::arg("rep"))
        .def_property_readonly("rep", &ProjPoint::rep)
        .def_property_readonly("level", &ProjPoint::level)
        .def_property_readonly("p", &ProjPoint::p)
        .def("lift", [](const ProjPoint& x, const std::string& reps) { return x.lift(rep_system_from_string(reps)); },
             py::arg("reps") = "standard")
        .def(py::self == py::self)
        .def("__hash__", [](const ProjPoint& x) { return py::hash(py::str(x.to_string())); })
        .def("__repr__", &ProjPoint::to_string);

    m.def("point_count", &point_count);
    m.def("enumerate_points", [](int d, std::uint64_t p, int n) { return enumerate_points(d, p, n); });
    m.def("reduce_point", &reduce_point);

    py::class_<MassZeroVector>(m, "MassZeroVector")
        .def(py::init([](int d, std::uint64_t p, int level, const std::vector<std::pair<ProjPoint, py::int_>>& entries) {
                 MassZeroVector::Entries e;
                 for (const auto& [x, c] : entries)
                     e[x] += from_py_int(c);
                 return MassZeroVector(d, p, level, e);
             }),
             py::arg("d"), py::arg("p"), py::arg("level"), py::arg("entries") = std::vector<std::pair<ProjPoint, py::int_>>{})
        .def_property_readonly("level", &MassZeroVector::level)
        .def("entries",
             [](const MassZeroVector& v) {
                 py::list out;
                 for (const auto& [x, c] : v.entries())
                     out.append(py::make_tuple(x, to_py_int(c)));
                 return out;
             })
        .def("json", [](const MassZeroVector& v) { return as_py(to_json(v)); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self == py::self);

    m.def("dirac_pair", &dirac_pair);
    m.def("pushforward", &pushforward);

    py::class_<DistributionFamily>(m, "DistributionFamily")
        .def_property_readonly("n_max", &DistributionFamily::n_max)
        .def("at", &DistributionFamily::at)
        .def("json", [](const DistributionFamily& f) { return as_py(to_json(f)); });
    m.def("random_family", &random_family, py::arg("d"), py::arg("p"), py::arg("n_max"), py::arg("seed"),
          py::arg("sparsity"), py::arg("coeff_bound") = 5);

    py::class_<Lattice>(m, "Lattice")
        .def_static("standard", &Lattice::standard)
        .def_static("from_generators",
                    [](std::uint64_t p, const IntMatrix& rows, int scale) { return Lattice::from_generators(p, rows, scale); },
                    py::arg("p"), py::arg("rows"), py::arg("scale") = 0)
        .def_property_readonly("basis", &Lattice::basis)
        .def_property_readonly("scale", &Lattice::scale)
        .def("class_key", &Lattice::class_key)
        .def("__repr__", &Lattice::to_string);
    m.def("neighbors", &neighbors);

    py::class_<PointedSimplex>(m, "PointedSimplex")
        .def(py::init<std::vector<Lattice>>())
        .def_property_readonly("k", &PointedSimplex::k)
        .def_property_readonly("type", &PointedSimplex::type)
        .def("lattice", &PointedSimplex::lattice)
        .def("json", [](const PointedSimplex& s) { return as_py(to_json(s)); })
        .def("__repr__", &PointedSimplex::to_string);
    m.def("standard_simplex", &standard_simplex);
    m.def("locality_depth", &locality_depth);
    m.def("ball_size", [](int d, std::uint64_t p, int r) { return ball(Lattice::standard(p, d + 1), r).vertices.size(); });
    m.def("ball_edges", [](int d, std::uint64_t p, int r) { return ball(Lattice::standard(p, d + 1), r).pointed_edges(); });

    m.def("tau", [](const std::vector<FieldElem>& z) {
        SymmetricSpacePoint sp(z);
        return as_py(to_json(tau(z), sp.certified_level()));
    });
    m.def("certified_level", [](const std::vector<FieldElem>& z) { return SymmetricSpacePoint(z).certified_level(); });
    m.def("member_open_cover", [](const std::vector<FieldElem>& z, int n) { return member_open_cover(z, n); });
    m.def("member_tube", [](const std::vector<FieldElem>& z, const PointedSimplex& s, bool open) {
        return member_tube(z, s, open ? TubeMode::open : TubeMode::closed);
    });

    m.def("lambda_sigma", [](const PointedSimplex& e, const ProjPoint& a, const ProjPoint& b) { return lambda_sigma(e, a, b); });
    m.def("lambda_oracle",
          [](const PointedSimplex& e, const ProjPoint& a, const ProjPoint& b) { return lambda_oracle(e, a.lift(), b.lift()); });
    m.def("pair_distribution", [](const MassZeroVector& mu, const PointedSimplex& e) { return to_py_int(pair_distribution(mu, e)); });

    py::class_<FormalProduct>(m, "FormalProduct")
        .def_property_readonly("level", &FormalProduct::level)
        .def("is_empty", &FormalProduct::is_empty)
        .def("json", [](const FormalProduct& u) { return as_py(to_json(u)); });
    m.def("alpha_level", [](const MassZeroVector& mu, const std::string& reps) {
        return alpha_level(mu, rep_system_from_string(reps));
    }, py::arg("mu"), py::arg("reps") = "standard");
    m.def("evaluate_product", [](const FormalProduct& u, const std::vector<FieldElem>& z) {
        return evaluate_product(u, SymmetricSpacePoint(z));
    });
    m.def("dlog_residue", [](const FormalProduct& u, const PointedSimplex& e) { return to_py_int(dlog_residue(u, e)); });

    m.def("convergence_certificate",
          [](const DistributionFamily& fam, const std::vector<FieldElem>& z1, const std::vector<FieldElem>& z2, int i,
             int n, int n_prime, const std::string& reps) {
              return as_py(to_json(convergence_certificate(fam, SymmetricSpacePoint(z1), SymmetricSpacePoint(z2), i, n,
                                                           n_prime, rep_system_from_string(reps))));
          },
          py::arg("fam"), py::arg("z1"), py::arg("z2"), py::arg("i"), py::arg("n"), py::arg("n_prime"),
          py::arg("reps") = "standard");
    m.def("equivariance_certificate",
          [](const IntMatrix& g, const MassZeroVector& mu, const std::vector<FieldElem>& z1,
             const std::vector<FieldElem>& z2) {
              return as_py(to_json(equivariance_certificate(g, mu, SymmetricSpacePoint(z1), SymmetricSpacePoint(z2))));
          });

    m.def("certify_all",
          [](std::uint64_t seed, std::optional<int> d, std::optional<std::uint64_t> p, std::vector<int> only) {
              CertifyOptions o;
              o.seed = seed;
              o.d = d;
              o.p = p;
              o.only = std::move(only);
              return as_py(certify_all(o).to_json());
          },
          py::arg("seed") = kDefaultSeed, py::arg("d") = py::none(), py::arg("p") = py::none(),
          py::arg("only") = std::vector<int>{});
}
