"""Prime-field arithmetic on canonical integer residues.

Elements are plain ints kept in the range 0 <= a < p; the field object only
carries the modulus and the operations.  Division by zero raises.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_PRIME = 2**31
DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3_215_031_751."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime p with 2 <= p < 2**31."""

    p: int

    def __post_init__(self):
        if not 2 <= self.p < MAX_PRIME:
            raise ValueError(f"prime must satisfy 2 <= p < 2**31, got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def normalize(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p
