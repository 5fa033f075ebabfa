"""Exact scalar arithmetic: prime fields, extensions, rationals, and
rationals with a square root of minus one adjoined."""

from ctcsa.fields import format_scalar, is_sum_of_two_squares, make_field


def main() -> None:
    gf7 = make_field("finite", 7)
    a, b = gf7.from_int(3), gf7.from_int(5)
    print(f"GF(7): 3 * 5 = {format_scalar(a * b)}, "
          f"3 / 5 = {format_scalar(a / b)}, -3 = {format_scalar(-a)}")

    gf8 = make_field("finite", 2, 3)
    omega = gf8.from_index(2)
    cube = omega * omega * omega
    print(f"GF(8): generator w = {format_scalar(omega)}, "
          f"w^3 = {format_scalar(cube)} (coefficients of the modulus basis)")
    found, pair = is_sum_of_two_squares(-gf8.one())
    x, y = pair
    print(f"GF(8): -1 = x^2 + y^2 with x={format_scalar(x)}, "
          f"y={format_scalar(y)} (found={found})")

    gf7_found, gf7_pair = is_sum_of_two_squares(-gf7.one())
    print(f"GF(7): -1 a sum of two squares? {gf7_found}, witness "
          f"{tuple(format_scalar(v) for v in gf7_pair)}")

    qq = make_field("rational")
    x, y = qq.from_fraction(3, 5), qq.from_fraction(4, 5)
    print(f"Q: (3/5)^2 + (4/5)^2 = {format_scalar(x * x + y * y)}")

    qi = make_field("gaussian-rational")
    i = qi.i()
    print(f"Q(i): i^2 = {format_scalar(i * i)}, "
          "so x=i, y=0 solves x^2 + y^2 = -1")


if __name__ == "__main__":
    main()
