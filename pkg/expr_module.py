'''
THIS MODULE CONTAINS THE EXPRESSION FRONT END FOR THE NONLINEARITY f(u).
EXPRESSIONS ARE TOKENIZED AND PARSED BY RECURSIVE DESCENT INTO IMMUTABLE
TREES, DIFFERENTIATED SYMBOLICALLY, PRINTED BACK TO TEXT, AND COMPILED INTO
CALLABLES THAT ACCEPT EITHER PYTHON FLOATS OR NUMPY ARRAYS.

grammar:
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary (('^' | '**') unary)?
    primary := number | 'u' | 'pi' | 'e' | name | func '(' expr ')' | '(' expr ')'
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math
import re
from dataclasses import dataclass
from typing import Callable, Optional, Union

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np

## DATA DEPENDENCIES
from data_dicts import expression_functions
from data_dicts import expression_constants
from data_dicts import expression_variable

## TYPE HINTS
from custom_types import Expr_text
from custom_types import Param_bindings

## ERRORS
from custom_types import ExprSyntaxError
from custom_types import ExprUnknownIdentifierError
from custom_types import ExprEvaluationError
from custom_types import ExprDifferentiationError


## EXPRESSION TREE NODES

@dataclass(frozen=True)
class Const:
    value:  float
    label:  Optional[str] = None    # "pi" or "e" for named constants

@dataclass(frozen=True)
class Var:
    pass

@dataclass(frozen=True)
class Param:
    name:   str

@dataclass(frozen=True)
class Unary:
    op:     str     # neg, exp, ln, sqrt, abs
    arg:    "Node"

@dataclass(frozen=True)
class Binary:
    op:     str     # add, sub, mul, div, pow
    left:   "Node"
    right:  "Node"

Node = Union[Const, Var, Param, Unary, Binary]

# a parsed expression and the names of its parameters
@dataclass(frozen=True)
class ExprAst:
    root:       Node
    parameters: frozenset


## SPECIALIZED HELPER FUNCTIONS

# collect the names of all parameters in a tree
def tree_parameters (
        node:           Node
                    ) ->    frozenset:

    if isinstance(node, Param):
        return frozenset([node.name])
    if isinstance(node, Unary):
        return tree_parameters(node.arg)
    if isinstance(node, Binary):
        return tree_parameters(node.left) | tree_parameters(node.right)

    return frozenset()

# check if a tree contains the variable u anywhere
def depends_on_u(
        node:       Node
                ) ->    bool:

    if isinstance(node, Var):
        return True
    if isinstance(node, Unary):
        return depends_on_u(node.arg)
    if isinstance(node, Binary):
        return depends_on_u(node.left) or depends_on_u(node.right)

    return False


## TOKENIZER AND PARSER

_TOKEN = re.compile(r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))")

# split the text into (kind, text, byte offset) tokens, closed by an "end" token
def tokenize(
        text:       Expr_text
            ) ->    list[tuple]:

    def byte_offset(pos):
        return len(text[:pos].encode("utf-8"))

    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            if text[pos:].strip() == "":
                break
            # skip the whitespace in front of the offending character
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character '{text[bad]}'", byte_offset(bad))
        kind = match.lastgroup
        start = match.start(kind)
        token_text = match.group(kind)
        if token_text == "**":
            token_text = "^"
        tokens.append((kind, token_text, byte_offset(start)))
        pos = match.end()

    tokens.append(("end", "", byte_offset(len(text))))

    return tokens

class _Parser:
    def __init__(self, text: Expr_text, parameters: Optional[list]):
        self.tokens = tokenize(text)
        self.index = 0
        self.parameters = None if parameters is None else set(parameters)

    def peek(self) -> tuple:
        return self.tokens[self.index]

    def take(self) -> tuple:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, symbol: str):
        kind, text, offset = self.take()
        if text != symbol or kind != "op":
            found = "end of input" if kind == "end" else f"'{text}'"
            raise ExprSyntaxError(f"expected '{symbol}' but found {found}", offset)

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = "add" if self.take()[1] == "+" else "sub"
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = "mul" if self.take()[1] == "*" else "div"
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            operand = self.unary()
            # fold the sign into plain numbers
            if isinstance(operand, Const) and operand.label is None:
                return Const(-operand.value)
            return Unary("neg", operand)
        if kind == "op" and text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return Binary("pow", base, self.unary())
        return base

    def primary(self) -> Node:
        kind, text, offset = self.take()
        if kind == "number":
            return Const(float(text))

        if kind == "name":
            if text in expression_functions:
                self.expect("(")
                argument = self.expr()
                self.expect(")")
                return Unary(expression_functions[text], argument)
            if text == expression_variable:
                return Var()
            if text in expression_constants:
                return Const(expression_constants[text], text)
            if self.parameters is not None and text not in self.parameters:
                valid = [expression_variable, *expression_constants, *sorted(self.parameters), *[f"{name}()" for name in expression_functions]]
                raise ExprUnknownIdentifierError(text, valid)
            return Param(text)

        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node

        found = "end of input" if kind == "end" else f"'{text}'"
        raise ExprSyntaxError(f"expected a number, name or '(' but found {found}", offset)

# parse an infix expression. when a parameter list is given, any other name is an unknown identifier
def parse   (
        text:       Expr_text,
        parameters: Optional[list] = None,
            ) ->    ExprAst:

    parser = _Parser(text, parameters)
    root = parser.expr()
    kind, token_text, offset = parser.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected '{token_text}' after a complete expression", offset)

    return ExprAst(root, tree_parameters(root))


## PRINTING

_PRECEDENCE = {"add":1, "sub":1, "mul":2, "div":2, "neg":3, "pow":4}
_SYMBOL = {"add":" + ", "sub":" - ", "mul":"*", "div":"/", "pow":"^"}

def _precedence(node: Node) -> int:
    if isinstance(node, Binary):
        return _PRECEDENCE[node.op]
    if isinstance(node, Unary) and node.op == "neg":
        return _PRECEDENCE["neg"]
    return 5

def _format_number(value: float) -> str:
    if value.is_integer() and value < 1e15:
        return str(int(value))
    return repr(value)

def _text(node: Node) -> str:
    if isinstance(node, Const):
        if node.label is not None:
            return node.label
        if math.copysign(1.0, node.value) < 0:
            return f"(-{_format_number(-node.value)})"
        return _format_number(node.value)
    if isinstance(node, Var):
        return expression_variable
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Unary):
        if node.op != "neg":
            return f"{node.op}({_text(node.arg)})"
        inner = _text(node.arg)
        return f"-({inner})" if _precedence(node.arg) < 4 else f"-{inner}"

    left, right = _text(node.left), _text(node.right)
    level = _PRECEDENCE[node.op]
    if node.op == "pow":
        if _precedence(node.left) <= 4:
            left = f"({left})"
        if _precedence(node.right) < 4:
            right = f"({right})"
    else:
        if _precedence(node.left) < level:
            left = f"({left})"
        if _precedence(node.right) <= level or _precedence(node.right) == _PRECEDENCE["neg"]:
            right = f"({right})"

    return f"{left}{_SYMBOL[node.op]}{right}"

# print an expression with the fewest parentheses that reparse to the same tree
def to_text (
        ast:        ExprAst
            ) ->    str:

    return _text(ast.root)


## DIFFERENTIATION

_ZERO = Const(0.0)
_ONE = Const(1.0)

def _is_value(node: Node, value: float) -> bool:
    return isinstance(node, Const) and node.label is None and node.value == value

def _both_plain(a: Node, b: Node) -> bool:
    return isinstance(a, Const) and isinstance(b, Const) and a.label is None and b.label is None

def _neg(a: Node) -> Node:
    if isinstance(a, Const) and a.label is None:
        return Const(-a.value)
    if isinstance(a, Unary) and a.op == "neg":
        return a.arg
    return Unary("neg", a)

def _add(a: Node, b: Node) -> Node:
    if _is_value(a, 0.0):
        return b
    if _is_value(b, 0.0):
        return a
    if _both_plain(a, b):
        return Const(a.value + b.value)
    return Binary("add", a, b)

def _sub(a: Node, b: Node) -> Node:
    if _is_value(b, 0.0):
        return a
    if _is_value(a, 0.0):
        return _neg(b)
    if _both_plain(a, b):
        return Const(a.value - b.value)
    return Binary("sub", a, b)

def _mul(a: Node, b: Node) -> Node:
    if _is_value(a, 0.0) or _is_value(b, 0.0):
        return _ZERO
    if _is_value(a, 1.0):
        return b
    if _is_value(b, 1.0):
        return a
    if _both_plain(a, b):
        return Const(a.value * b.value)
    return Binary("mul", a, b)

def _div(a: Node, b: Node) -> Node:
    if _is_value(a, 0.0):
        return _ZERO
    if _is_value(b, 1.0):
        return a
    return Binary("div", a, b)

def _pow(a: Node, b: Node) -> Node:
    if _is_value(b, 0.0):
        return _ONE
    if _is_value(b, 1.0):
        return a
    return Binary("pow", a, b)

def _derivative(node: Node) -> Node:
    if isinstance(node, (Const, Param)):
        return _ZERO
    if isinstance(node, Var):
        return _ONE

    if isinstance(node, Unary):
        a = node.arg
        da = _derivative(a)
        if node.op == "neg":
            return _neg(da)
        if node.op == "exp":
            return _mul(node, da)
        if node.op == "ln":
            return _div(da, a)
        if node.op == "sqrt":
            return _div(da, _mul(Const(2.0), node))
        raise ExprDifferentiationError(f"'{node.op}' is not differentiable everywhere; f must be twice continuously differentiable")

    a, b = node.left, node.right
    da, db = _derivative(a), _derivative(b)
    if node.op == "add":
        return _add(da, db)
    if node.op == "sub":
        return _sub(da, db)
    if node.op == "mul":
        return _add(_mul(da, b), _mul(a, db))
    if node.op == "div":
        if not depends_on_u(b):
            return _div(da, b)
        return _div(_sub(_mul(da, b), _mul(a, db)), _pow(b, Const(2.0)))

    # power rule, with the constant-exponent and constant-base cases kept small
    if not depends_on_u(b):
        return _mul(_mul(b, _pow(a, _sub(b, _ONE))), da)
    if not depends_on_u(a):
        return _mul(_mul(node, Unary("ln", a)), db)
    return _mul(node, _add(_mul(db, Unary("ln", a)), _div(_mul(b, da), a)))

# exact symbolic derivative of order 1 or 2 with respect to u
def differentiate   (
        ast:        ExprAst,
        order:      int = 1,
                    ) ->    ExprAst:

    if order not in (1, 2):
        raise ExprDifferentiationError(f"derivative order must be 1 or 2, not {order}")

    root = ast.root
    for _ in range(order):
        root = _derivative(root)

    return ExprAst(root, tree_parameters(root))


## EVALUATION

def _scalar_ln(x):
    if x <= 0:
        raise ExprEvaluationError(f"ln of non-positive value {x!r}")
    return math.log(x)

def _scalar_sqrt(x):
    if x < 0:
        raise ExprEvaluationError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)

def _scalar_exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf

def _scalar_div(x, y):
    if y == 0:
        raise ExprEvaluationError("division by zero")
    return x / y

def _scalar_pow(x, y):
    integer = float(y).is_integer()
    if not integer and x <= 0:
        raise ExprEvaluationError(f"non-integer power {y!r} of non-positive base {x!r}")
    if integer and x == 0 and y < 0:
        raise ExprEvaluationError("negative power of zero")
    try:
        return math.pow(x, y)
    except OverflowError:
        odd = integer and x < 0 and float(y) % 2 == 1
        return -math.inf if odd else math.inf

def _array_ln(x):
    if np.any(x <= 0):
        raise ExprEvaluationError("ln of non-positive value")
    return np.log(x)

def _array_sqrt(x):
    if np.any(x < 0):
        raise ExprEvaluationError("sqrt of negative value")
    return np.sqrt(x)

def _array_div(x, y):
    if np.any(y == 0):
        raise ExprEvaluationError("division by zero")
    return x / y

def _array_pow(x, y):
    integer = np.equal(np.mod(y, 1.0), 0.0)
    if np.any(~integer & (x <= 0)):
        raise ExprEvaluationError("non-integer power of non-positive base")
    if np.any(integer & (x == 0) & (y < 0)):
        raise ExprEvaluationError("negative power of zero")
    return np.power(x, y)

_SCALAR_OPS = {"neg":lambda x: -x, "exp":_scalar_exp, "ln":_scalar_ln, "sqrt":_scalar_sqrt, "abs":abs,
               "add":lambda x, y: x + y, "sub":lambda x, y: x - y, "mul":lambda x, y: x * y, "div":_scalar_div, "pow":_scalar_pow}

_ARRAY_OPS  = {"neg":np.negative, "exp":np.exp, "ln":_array_ln, "sqrt":_array_sqrt, "abs":np.abs,
               "add":np.add, "sub":np.subtract, "mul":np.multiply, "div":_array_div, "pow":_array_pow}

# turn a tree into nested closures using one table of operations
def _build  (
        node:       Node,
        bindings:   Param_bindings,
        ops:        dict,
            ) ->    Callable:

    if isinstance(node, Const):
        value = node.value
        return lambda u: value
    if isinstance(node, Var):
        return lambda u: u
    if isinstance(node, Param):
        if node.name not in bindings:
            raise ExprEvaluationError(f"no value bound for parameter '{node.name}'")
        value = float(bindings[node.name])
        return lambda u: value
    if isinstance(node, Unary):
        op = ops[node.op]
        arg = _build(node.arg, bindings, ops)
        return lambda u: op(arg(u))

    op = ops[node.op]
    left = _build(node.left, bindings, ops)
    right = _build(node.right, bindings, ops)
    return lambda u: op(left(u), right(u))

# compile a tree into a callable of u; floats go through math, arrays through numpy
def compile_expr(
        ast:        ExprAst,
        bindings:   Param_bindings = None,
                ) ->    Callable:

    bindings = {} if bindings is None else bindings
    scalar_fn = _build(ast.root, bindings, _SCALAR_OPS)
    array_fn = _build(ast.root, bindings, _ARRAY_OPS)

    def evaluate_compiled(u):
        if np.ndim(u) == 0:
            value = float(scalar_fn(float(u)))
            if math.isnan(value):
                raise ExprEvaluationError(f"expression is undefined at u={float(u)!r}")
            return value

        x = np.asarray(u, dtype=float)
        with np.errstate(all="ignore"):
            value = np.array(np.broadcast_to(array_fn(x), x.shape), dtype=float)
        if np.isnan(value).any():
            raise ExprEvaluationError("expression is undefined at some of the requested points")
        return value

    return evaluate_compiled

# value of an expression at one point
def evaluate(
        ast:        ExprAst,
        u:          float,
        bindings:   Param_bindings = None,
            ) ->    float:

    return compile_expr(ast, bindings)(u)
