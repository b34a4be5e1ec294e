#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "fragmark/attack.hpp"
#include "fragmark/chaos.hpp"
#include "fragmark/error.hpp"
#include "fragmark/image_io.hpp"
#include "fragmark/keyfile.hpp"
#include "fragmark/metrics.hpp"
#include "fragmark/watermark.hpp"

namespace py = pybind11;
using namespace fragmark;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

std::vector<std::uint8_t> copy_2d(const U8Array& arr, std::size_t& rows, std::size_t& cols) {
    if (arr.ndim() != 2) throw Error(ErrorCode::InvalidArgument, "expected a 2-D uint8 array");
    rows = static_cast<std::size_t>(arr.shape(0));
    cols = static_cast<std::size_t>(arr.shape(1));
    return {arr.data(), arr.data() + arr.size()};
}

GrayImage to_gray(const U8Array& arr) {
    std::size_t rows = 0, cols = 0;
    auto data = copy_2d(arr, rows, cols);
    return GrayImage(rows, cols, std::move(data));
}

NibblePlane to_nibbles(const U8Array& arr) {
    std::size_t rows = 0, cols = 0;
    auto data = copy_2d(arr, rows, cols);
    return NibblePlane(rows, cols, std::move(data));
}

template <typename Raster>
U8Array to_array(const Raster& img) {
    U8Array out({static_cast<py::ssize_t>(img.rows()), static_cast<py::ssize_t>(img.cols())});
    std::memcpy(out.mutable_data(), img.data().data(), img.size());
    return out;
}

std::vector<std::uint8_t> key_bytes(const py::object& key) {
    if (py::isinstance<py::str>(key)) {
        const std::string s = key.cast<std::string>();
        return {s.begin(), s.end()};
    }
    const std::string s = key.cast<py::bytes>();
    return {s.begin(), s.end()};
}

}  // namespace

PYBIND11_MODULE(_fragmark, m) {
    m.doc() = "Fragile watermark embedding, extraction and tamper verification";

    py::register_exception<Error>(m, "FragmarkError", PyExc_ValueError);

    m.attr("LOGISTIC_R") = kLogisticR;

    py::class_<ChaosState>(m, "ChaosState")
        .def(py::init<double, double>(), py::arg("k"), py::arg("r") = kLogisticR)
        .def_property_readonly("k", &ChaosState::k)
        .def_property_readonly("r", &ChaosState::r)
        .def("__eq__", [](const ChaosState& a, const ChaosState& b) { return a == b; })
        .def("__repr__", [](const ChaosState& s) {
            return "ChaosState(k=" + std::to_string(s.k()) + ", r=" + std::to_string(s.r()) + ")";
        });

    m.def("chaos_seed", [](const py::object& key) {
        const auto bytes = key_bytes(key);
        return chaos_seed(std::span<const std::uint8_t>(bytes));
    }, py::arg("key"));
    m.def("chaos_step", [](const ChaosState& s) {
        const ChaosDraw d = chaos_step(s);
        return py::make_tuple(d.x, d.y, d.next);
    }, py::arg("state"));

    py::class_<PositionRecord>(m, "PositionRecord")
        .def_property_readonly("cover_shape", [](const PositionRecord& r) {
            return py::make_tuple(r.cover.rows, r.cover.cols);
        })
        .def_property_readonly("tag_shape", [](const PositionRecord& r) {
            return py::make_tuple(r.tag.rows, r.tag.cols);
        })
        .def_property_readonly("positions", [](const PositionRecord& r) {
            py::array_t<std::uint32_t> out({static_cast<py::ssize_t>(r.positions.size()), py::ssize_t{2}});
            auto view = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < r.positions.size(); ++i) {
                view(i, 0) = r.positions[i].row;
                view(i, 1) = r.positions[i].col;
            }
            return out;
        })
        .def_property_readonly("tag_digest", [](const PositionRecord& r) {
            return py::bytes(reinterpret_cast<const char*>(r.tag_digest.data()), r.tag_digest.size());
        })
        .def("to_bytes", [](const PositionRecord& r) {
            const auto bytes = encode_key(r);
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        })
        .def_static("from_bytes", [](const py::bytes& b) {
            const std::string s = b;
            return decode_key(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        })
        .def("__eq__", [](const PositionRecord& a, const PositionRecord& b) { return a == b; })
        .def("__len__", [](const PositionRecord& r) { return r.positions.size(); });

    m.def("read_key", &read_key, py::arg("path"));
    m.def("write_key", &write_key, py::arg("record"), py::arg("path"));

    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("authentic", &VerifyReport::authentic)
        .def_readonly("ber", &VerifyReport::ber)
        .def_property_readonly("tampered_positions", [](const VerifyReport& r) {
            py::list out;
            for (const auto& t : r.tampered_positions) {
                out.append(py::make_tuple(t.tag_row, t.tag_col, t.cover_row, t.cover_col));
            }
            return out;
        });

    m.def("initialize_cover", [](const U8Array& cover) {
        return to_array(initialize_cover(to_gray(cover)));
    }, py::arg("cover"));
    m.def("prepare_tag", [](const U8Array& tag) { return to_array(prepare_tag(to_gray(tag))); },
          py::arg("tag"));
    m.def("map_unit_to_coord", &map_unit_to_coord, py::arg("u"), py::arg("extent"));

    m.def("embed", [](const U8Array& cover, const U8Array& tag, const py::object& key) {
        const auto bytes = key_bytes(key);
        Embedding e;
        {
            py::gil_scoped_release release;
            e = embed(to_gray(cover), to_gray(tag), std::span<const std::uint8_t>(bytes));
        }
        return py::make_tuple(to_array(e.watermarked), std::move(e.record));
    }, py::arg("cover"), py::arg("tag"), py::arg("key"),
       "Returns (watermarked image, PositionRecord).");

    m.def("extract", [](const U8Array& watermarked, const PositionRecord& record) {
        const Extraction ex = extract(to_gray(watermarked), record);
        return py::make_tuple(to_array(ex.tag), to_array(ex.payload));
    }, py::arg("watermarked"), py::arg("record"), "Returns (reconstructed tag, nibble payload).");

    m.def("verify", [](const U8Array& watermarked, const PositionRecord& record,
                       const std::optional<U8Array>& reference) {
        const GrayImage img = to_gray(watermarked);
        if (reference) return verify(img, record, to_nibbles(*reference));
        return verify(img, record);
    }, py::arg("watermarked"), py::arg("record"), py::arg("reference") = py::none(),
       "reference, when given, is a nibble plane such as prepare_tag(original_tag).");

    m.def("psnr", [](const U8Array& a, const U8Array& b) { return psnr(to_gray(a), to_gray(b)); },
          py::arg("a"), py::arg("b"));
    m.def("ber", [](const U8Array& a, const U8Array& b) { return ber(to_nibbles(a), to_nibbles(b)); },
          py::arg("a"), py::arg("b"));

    m.def("apply_attack", [](const U8Array& image, const std::string& kind, double density,
                             double sigma, std::optional<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> rect,
                             int fill, std::size_t count, std::uint64_t seed) {
        AttackSpec spec;
        spec.kind = parse_attack_kind(kind);
        spec.density = density;
        spec.sigma = sigma;
        if (rect) {
            const auto [r, c, h, w] = *rect;
            spec.rect = {r, c, h, w};
        }
        if (fill < 0 || fill > 255) throw Error(ErrorCode::InvalidAttack, "invalid attack: fill out of range");
        spec.fill = static_cast<std::uint8_t>(fill);
        spec.count = count;
        spec.rng_seed = seed;
        return to_array(apply_attack(to_gray(image), spec));
    }, py::arg("image"), py::arg("kind"), py::arg("density") = 0.0, py::arg("sigma") = 0.0,
       py::arg("rect") = py::none(), py::arg("fill") = 0, py::arg("count") = 0, py::arg("seed") = 0);

    m.def("read_image", [](const std::filesystem::path& path, bool to_gray_flag) {
        return to_array(read_image(path, ReadOptions{to_gray_flag}));
    }, py::arg("path"), py::arg("to_gray") = false);
    m.def("write_image", [](const U8Array& image, const std::filesystem::path& path) {
        write_image(to_gray(image), path);
    }, py::arg("image"), py::arg("path"));
}
