#include <fstream>
#include <sstream>

#include <json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slp/discharge.hpp"
#include "slp/parser.hpp"
#include "slp/pogen.hpp"
#include "slp/render.hpp"
#include "slp/traces.hpp"
#include "slp/validate.hpp"

namespace py = pybind11;
using namespace slp;

namespace {

// Parsed model plus its CHECK interpretation.
struct Model {
  SlpModel model;
  Interpretation interp;

  explicit Model(const std::string& text) : model(parse_model(text)) {
    auto diags = validate_model(model);
    if (has_errors(diags)) {
      std::string msg;
      for (const auto& d : diags)
        if (d.is_error()) msg += (msg.empty() ? "" : "\n") + d.str();
      throw SlpError("validation-error", msg);
    }
    interp = build_interpretation(model);
  }
};

py::object to_python(const std::string& json_text) {
  return py::module_::import("json").attr("loads")(json_text);
}

Options make_options(bool strict_paper, bool strict_feasibility, const std::string& ref_mode) {
  Options o;
  o.strict_paper = strict_paper;
  o.strict_feasibility = strict_feasibility;
  if (ref_mode != "inter" && ref_mode != "union") throw SlpError("config-error", "ref_mode is inter or union");
  o.ref_mode = ref_mode == "union" ? RefMode::Union : RefMode::Inter;
  return o;
}

py::list trace_list(const TraceSet& ts) {
  py::list out;
  for (const auto& t : ts) {
    py::list el;
    for (const auto& e : t) el.append(py::cast(e));
    out.append(el);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_slp, m) {
  m.doc() = "SLP proof obligation generator and finite checker";

  static py::exception<SlpError> error(m, "SlpError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SlpError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(std::string(e.what()));
      exc.attr("code") = e.code();
      if (e.span()) exc.attr("line") = e.span()->begin.line;
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Model>(m, "Model")
      .def(py::init<const std::string&>(), py::arg("text"))
      .def_static("from_file",
                  [](const std::string& path) {
                    std::ifstream in(path);
                    if (!in) throw SlpError("io-error", "cannot read " + path);
                    std::stringstream ss;
                    ss << in.rdbuf();
                    return Model(ss.str());
                  })
      .def_property_readonly("name", [](const Model& self) { return self.model.name; })
      .def_property_readonly("processes",
                             [](const Model& self) {
                               std::vector<std::string> out;
                               for (const auto& p : self.model.processes) out.push_back(p.label);
                               return out;
                             })
      .def("render", [](const Model& self) { return render(self.model); })
      .def(
          "obligations",
          [](const Model& self, const std::string& filter) {
            py::list out;
            for (const auto& po : generate(self.model, self.interp)) {
              if (!glob_match(filter, po.id)) continue;
              py::dict d;
              d["id"] = po.id;
              d["family"] = family_name(po.family);
              d["sequent"] = display_sequent(po);
              out.append(d);
            }
            return out;
          },
          py::arg("filter") = "*")
      .def(
          "check",
          [](const Model& self, const std::string& filter, unsigned workers, bool strict_paper,
             bool strict_feasibility, const std::string& ref_mode) {
            Report rep;
            {
              py::gil_scoped_release release;
              rep = check_all(self.model, self.interp, filter,
                              make_options(strict_paper, strict_feasibility, ref_mode), workers);
            }
            return to_python(report_json(rep));
          },
          py::arg("filter") = "*", py::arg("workers") = 1, py::arg("strict_paper") = false,
          py::arg("strict_feasibility") = false, py::arg("ref_mode") = "inter")
      .def("export_smt",
           [](const Model& self, const std::string& id, bool bounded) {
             for (const auto& po : generate(self.model, self.interp))
               if (po.id == id) return export_solver(self.model, po, bounded ? &self.interp : nullptr);
             throw SlpError("no-such-po", "no obligation " + id);
           },
           py::arg("id"), py::arg("bounded") = true)
      .def(
          "process_traces",
          [](const Model& self, const std::string& process, std::size_t depth) {
            TraceOptions o;
            o.depth = depth;
            return trace_list(process_traces(self.model, process, self.interp, o));
          },
          py::arg("process"), py::arg("depth") = 8)
      .def(
          "trace",
          [](const Model& self, const std::string& process, std::size_t depth) {
            TraceOptions o;
            o.depth = depth;
            auto inc = check_inclusion(self.model, process, refmap_of(self.model, process), self.interp, o);
            auto div = check_divergence(self.model, process, self.interp);
            py::dict d;
            d["included"] = inc.included;
            d["counter"] = inc.counter ? py::object(trace_list({*inc.counter})[0]) : py::none();
            d["divergence"] = div.discharged;
            return d;
          },
          py::arg("process"), py::arg("depth") = 8)
      .def("write_sets", [](const Model& self) {
        py::dict d;
        for (const auto& p : self.model.processes)
          if (p.body) d[py::str(p.label)] = py::cast(write_set(*p.body));
        return d;
      });
}
