#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "oped/io.hpp"
#include "oped/phantom.hpp"

using namespace oped;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "oped_io_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Sinogram random_sinogram(std::mt19937& rng, int m, Variant v) {
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    Sinogram s = make_sinogram(build_geometry(m, v));
    for (double& x : s.data) x = dist(rng);
    return s;
}

}  // namespace

TEST_CASE("sinogram roundtrip is bit exact") {
    std::mt19937 rng(1);
    for (int rep = 0; rep < 20; ++rep) {
        int m = 1 + static_cast<int>(rng() % 9);
        Variant v = (rng() & 1) ? Variant::TypeI : Variant::TypeII;
        Sinogram s = random_sinogram(rng, m, v);
        fs::path p = temp_file("roundtrip.sino");
        write_sinogram(p.string(), s);
        Sinogram back = read_sinogram(p.string());
        CHECK(back.geometry.m == m);
        CHECK(back.geometry.variant == v);
        REQUIRE(back.data.size() == s.data.size());
        CHECK(std::memcmp(back.data.data(), s.data.data(), s.data.size() * 8) == 0);
    }
}

TEST_CASE("image roundtrip is bit exact") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        int size = 1 + static_cast<int>(rng() % 40);
        ImageGrid img = make_image(size, 0.25 + 0.5 * dist(rng) / 3.0, dist(rng));
        for (double& v : img.values) v = dist(rng);
        fs::path p = temp_file("roundtrip.img");
        write_image(p.string(), img);
        ImageGrid back = read_image(p.string());
        CHECK(back.size == img.size);
        CHECK(back.roi == img.roi);
        CHECK(back.fill == img.fill);
        CHECK(std::memcmp(back.values.data(), img.values.data(), img.values.size() * 8) == 0);
    }
}

TEST_CASE("sinogram bytes are pinned") {
    // golden layout: magic, u32 version, u32 m, u8 variant, 3 zero bytes,
    // then little-endian doubles nu-major
    Sinogram s = make_sinogram(build_geometry(1, Variant::TypeI));
    s.at(0, 0) = 1.0;
    fs::path p = temp_file("golden.sino");
    write_sinogram(p.string(), s);
    std::string bytes = slurp(p);
    REQUIRE(bytes.size() == 20 + 9 * 8);
    CHECK(bytes.substr(0, 8) == "OPEDSINO");
    const unsigned char* u = reinterpret_cast<const unsigned char*>(bytes.data());
    CHECK(u[8] == 1);   // version 1, little endian
    CHECK(u[9] == 0);
    CHECK(u[12] == 1);  // m = 1
    CHECK(u[16] == 1);  // variant byte
    CHECK(u[17] == 0);
    CHECK(u[18] == 0);
    CHECK(u[19] == 0);
    // 1.0 as an IEEE-754 little-endian double
    const unsigned char one[8] = {0, 0, 0, 0, 0, 0, 0xf0, 0x3f};
    CHECK(std::memcmp(u + 20, one, 8) == 0);
    for (int i = 0; i < 8; ++i) CHECK(u[28 + i] == 0);
}

TEST_CASE("distinct error kinds") {
    std::mt19937 rng(3);
    Sinogram s = random_sinogram(rng, 2, Variant::TypeI);
    fs::path p = temp_file("errors.sino");
    write_sinogram(p.string(), s);
    const std::string good = slurp(p);

    SUBCASE("bad magic") {
        std::string bad = good;
        bad[0] = 'X';
        spit(p, bad);
        try {
            read_sinogram(p.string());
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.kind() == IoError::Kind::BadMagic);
        }
    }
    SUBCASE("version mismatch") {
        std::string bad = good;
        bad[8] = 9;
        spit(p, bad);
        try {
            read_sinogram(p.string());
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.kind() == IoError::Kind::BadVersion);
        }
    }
    SUBCASE("truncated payload") {
        spit(p, good.substr(0, good.size() - 5));
        try {
            read_sinogram(p.string());
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.kind() == IoError::Kind::Truncated);
        }
    }
    SUBCASE("trailing bytes") {
        spit(p, good + "zz");
        try {
            read_sinogram(p.string());
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.kind() == IoError::Kind::BadHeader);
        }
    }
    SUBCASE("non-finite payload") {
        std::string bad = good;
        const double nan_val = std::nan("");
        std::memcpy(bad.data() + 20, &nan_val, 8);
        spit(p, bad);
        try {
            read_sinogram(p.string());
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.kind() == IoError::Kind::NonFinite);
        }
    }
    SUBCASE("bad variant byte") {
        std::string bad = good;
        bad[16] = 7;
        spit(p, bad);
        try {
            read_sinogram(p.string());
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.kind() == IoError::Kind::BadHeader);
        }
    }
    SUBCASE("missing file") {
        try {
            read_sinogram((temp_file("nope.sino")).string());
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(e.kind() == IoError::Kind::OpenFailed);
        }
    }
}

TEST_CASE("writing non-finite data is rejected") {
    Sinogram s = make_sinogram(build_geometry(1, Variant::TypeI));
    s.data[4] = std::numeric_limits<double>::infinity();
    try {
        write_sinogram(temp_file("inf.sino").string(), s);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(e.kind() == IoError::Kind::NonFinite);
    }
}

TEST_CASE("pgm endpoint mapping") {
    ImageGrid img = make_image(2, 2.0, 0.0);
    img.at(0, 0) = 0.0;
    img.at(0, 1) = 1.0;
    img.at(1, 0) = 1.0;
    img.at(1, 1) = 0.0;
    fs::path p = temp_file("checker.pgm");
    export_pgm(p.string(), img);
    std::string bytes = slurp(p);
    const std::string header = "P5\n2 2\n65535\n";
    REQUIRE(bytes.substr(0, header.size()) == header);
    const unsigned char* px = reinterpret_cast<const unsigned char*>(bytes.data() + header.size());
    auto sample = [&](int i) { return (int(px[2 * i]) << 8) | int(px[2 * i + 1]); };
    CHECK(sample(0) == 0);
    CHECK(sample(1) == 65535);
    CHECK(sample(2) == 65535);
    CHECK(sample(3) == 0);
    std::string sidecar = slurp(p.string() + ".json");
    CHECK(sidecar.find("\"min\":0") != std::string::npos);
    CHECK(sidecar.find("\"max\":1") != std::string::npos);
}

TEST_CASE("constant image maps to zero samples") {
    ImageGrid img = make_image(3, 2.0, 0.0);
    for (double& v : img.values) v = 4.25;
    fs::path p = temp_file("flat.pgm");
    export_pgm(p.string(), img);
    std::string bytes = slurp(p);
    const std::string header = "P5\n3 3\n65535\n";
    REQUIRE(bytes.size() == header.size() + 18);
    for (size_t i = header.size(); i < bytes.size(); ++i) CHECK(bytes[i] == 0);
    std::string sidecar = slurp(p.string() + ".json");
    CHECK(sidecar.find("\"min\":4.25") != std::string::npos);
    CHECK(sidecar.find("\"max\":4.25") != std::string::npos);
}

TEST_CASE("csv export layout") {
    ScanGeometry g = build_geometry(1, Variant::TypeII);
    Sinogram s = make_sinogram(g);
    s.at(0, 0) = 1.5;
    fs::path p = temp_file("sino.csv");
    export_sinogram_csv(p.string(), s);
    std::string text = slurp(p);
    CHECK(text.rfind("nu,j,phi,t,value\n", 0) == 0);
    // TypeII labels detectors starting at j = 1
    CHECK(text.find("\n0,1,0,") != std::string::npos);
    CHECK(text.find("1.5") != std::string::npos);
}
