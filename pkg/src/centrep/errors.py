"""Exception types shared across the package."""

from __future__ import annotations


class CentrepError(Exception):
    """Base class for all errors raised by this package."""


# -- group construction ------------------------------------------------------

class NotAssociative(CentrepError):
    pass


class NoIdentity(CentrepError):
    pass


class NoInverse(CentrepError):
    pass


class NotAPermutation(CentrepError):
    pass


class OrderCapExceeded(CentrepError):
    pass


class UnknownSpec(CentrepError):
    pass


class ParameterOutOfRange(CentrepError):
    pass


class ActionNotAutomorphism(CentrepError):
    pass


class ActionNotHomomorphism(CentrepError):
    pass


class NotNormal(CentrepError):
    pass


class TrivialGroup(CentrepError):
    pass


class NotAbelian(CentrepError):
    pass


class NotASubgroup(CentrepError):
    pass


class NotAHomomorphism(CentrepError):
    pass


# -- cyclotomic arithmetic ---------------------------------------------------

class ConductorOverflow(CentrepError):
    pass


# -- characters and tables ---------------------------------------------------

class GroupMismatch(CentrepError):
    pass


class NotIrreducible(CentrepError):
    pass


class NotACharacter(CentrepError):
    pass


class NotFaithful(CentrepError):
    pass


class SubgroupNotContained(CentrepError):
    pass


class CenterNotPrimePower(CentrepError):
    pass


class HypothesisViolated(CentrepError):
    pass


class NotCharacterOfCenter(CentrepError):
    pass


class InternalSplitFailure(CentrepError):
    # raised only if the eigenspace splitting loop fails to separate all
    # characters, which theory rules out; it existing at all is defensive
    pass


# -- modules -----------------------------------------------------------------

class CapExceeded(CentrepError):
    pass


class NotSemisimple(CentrepError):
    pass


class NotAModule(CentrepError):
    pass


class PreconditionViolated(CentrepError):
    pass


# -- cocycles and central extensions ----------------------------------------

class InvalidCocycle(CentrepError):
    pass


class CocycleIdentityFails(InvalidCocycle):
    pass


class NotNormalized(InvalidCocycle):
    pass


class MuNotCentral(CentrepError):
    pass


class MuNotCyclic(CentrepError):
    pass


class MuNotKernel(CentrepError):
    pass


class NoFaithfulCentralCharacter(CentrepError):
    pass


# -- checker assertions ------------------------------------------------------

class MathInvariantError(CentrepError):
    """A proved statement failed computationally; signals an engine bug
    or a genuine counterexample and is always surfaced, never swallowed."""


# -- DSL ---------------------------------------------------------------------

class SpecSyntaxError(CentrepError):
    def __init__(self, line: int, col: int, expected: str):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"line {line}, col {col}: expected {expected}")
