#include <random>

#include "doctest.h"
#include "koszulkit/field.hpp"

using namespace koszulkit;

TEST_SUITE("exactfield") {
  TEST_CASE("inverse in F7 agrees with exhaustive search") {
    Field f = Field::prime(7);
    for (long a = 1; a < 7; ++a) {
      long found = -1;
      for (long b = 1; b < 7; ++b)
        if ((a * b) % 7 == 1) found = b;
      CHECK(FieldElement(f, a).inverse() == FieldElement(f, found));
    }
    CHECK(FieldElement(f, 3).inverse().residue() == 5);
  }

  TEST_CASE("rational sums and characteristic two") {
    Field q = Field::rationals();
    FieldElement s = FieldElement(q, mpq_class(1, 2)) + FieldElement(q, mpq_class(1, 3));
    CHECK(s.to_string() == "5/6");
    Field f2 = Field::prime(2);
    CHECK((FieldElement(f2, 1) + FieldElement(f2, 1)).is_zero());
  }

  TEST_CASE("errors") {
    Field f = Field::prime(7);
    CHECK_THROWS_AS(FieldElement(f, 0).inverse(), FieldError);
    CHECK_THROWS_AS(FieldElement(f, 1) / FieldElement(f, 0), FieldError);
    CHECK_THROWS_AS(FieldElement(f, 1) + FieldElement(Field::prime(5), 1), FieldError);
    CHECK_THROWS_AS(FieldElement(f, 1) * FieldElement(Field::rationals(), 1), FieldError);
    CHECK_THROWS_AS(Field::prime(8), FieldError);
    CHECK_THROWS_AS(Field::parse("GF9"), FieldError);
  }

  TEST_CASE("field strings") {
    CHECK(Field::parse("QQ").is_rational());
    CHECK(Field::parse("F2").characteristic() == 2);
    CHECK(Field::parse("F32003").characteristic() == 32003);
    CHECK(Field::parse("Fp:101").characteristic() == 101);
    CHECK(Field::parse("F7").name() == "F7");
  }

  TEST_CASE("residues and normalized fractions") {
    Field f = Field::prime(7);
    CHECK(FieldElement(f, -1).residue() == 6);
    CHECK(FieldElement(f, mpq_class(1, 2)).residue() == 4);
    FieldElement q(Field::rationals(), mpq_class(6, -4));
    CHECK(q.rational().get_den() == 2);
    CHECK(q.rational().get_num() == -3);
    CHECK_THROWS_AS(FieldElement(f, mpq_class(1, 7)), FieldError);
  }

  TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (Field f : {Field::prime(2), Field::prime(7), Field::prime(32003), Field::rationals()}) {
      for (int k = 0; k < 200; ++k) {
        FieldElement a, b, c;
        if (f.is_rational()) {
          long den1 = d(rng), den2 = d(rng), den3 = d(rng);
          a = FieldElement(f, mpq_class(d(rng), den1 ? den1 : 1));
          b = FieldElement(f, mpq_class(d(rng), den2 ? den2 : 1));
          c = FieldElement(f, mpq_class(d(rng), den3 ? den3 : 1));
        } else {
          a = FieldElement(f, d(rng));
          b = FieldElement(f, d(rng));
          c = FieldElement(f, d(rng));
        }
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a - a == FieldElement(f, 0));
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      }
    }
  }
}
