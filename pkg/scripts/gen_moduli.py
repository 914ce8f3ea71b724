"""Print the default modulus table: smallest irreducible with constant term 1."""

from qbent.field import MAX_DEGREE, smallest_irreducible

if __name__ == "__main__":
    for n in range(1, MAX_DEGREE + 1):
        print(f"{n},{smallest_irreducible(n):x}")
