from fractions import Fraction


def is_prime(n):
    if not isinstance(n, int) or n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def log_p(x, p):
    """Return k with x == p**k (k may be negative), or None."""
    x = Fraction(x)
    if x <= 0:
        return None
    k = 0
    num, den = x.numerator, x.denominator
    if den == 1:
        while num % p == 0:
            num //= p
            k += 1
        return k if num == 1 else None
    if num != 1:
        return None
    while den % p == 0:
        den //= p
        k -= 1
    return k if den == 1 else None


def fmt(x):
    """Exact string for a rational: '13/3' or '5'."""
    return str(Fraction(x))
