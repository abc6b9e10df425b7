from dataclasses import dataclass

from solve_benchmark import DEFAULT_LADDER, dft_root, parse_ladder
from utils import ConfigError, get_field

COMMANDS = ("factor", "solve", "verify", "bench")


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: str = None
    n: int = None
    backend: str = None
    eps: float = None
    m: int = None
    seed: int = 0
    check: bool = False
    dft: bool = False
    input_path: str = None
    output_path: str = None
    ladder: tuple = DEFAULT_LADDER
    with_l: bool = False
    stub: str = None

    @classmethod
    def from_args(cls, args):
        dft = bool(args.dft)
        backend = args.backend
        if backend is None:
            wants_complex = dft or args.command == "bench" or (args.q or "").strip().startswith("[")
            backend = "complex" if wants_complex else "exact"
        config = cls(
            command=args.command,
            q=args.q,
            n=args.n,
            backend=backend,
            eps=args.eps,
            m=args.m,
            seed=args.seed,
            check=args.check,
            dft=dft,
            input_path=args.input_path,
            output_path=args.output_path,
            ladder=parse_ladder(args.ladder) if args.ladder else DEFAULT_LADDER,
            with_l=args.with_l,
            stub=args.stub,
        )
        config.validate()
        return config

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.command == "bench":
            if self.backend != "complex":
                raise ConfigError("bench requires complex backend")
            return
        if self.n is None or self.n < 1:
            raise ConfigError(f"--n must be at least 1, got {self.n}")
        if self.dft and self.backend != "complex":
            raise ConfigError("--dft requires the complex backend")
        if not self.dft and self.q is None:
            raise ConfigError("--q is required unless --dft is given")
        if self.m is not None and self.m < 1:
            raise ConfigError(f"--m must be at least 1, got {self.m}")
        if self.command == "solve" and self.input_path is None:
            raise ConfigError("solve needs the right-hand side via --in")

    @property
    def field(self):
        return get_field(self.backend)

    def q_value(self):
        """q as a backend scalar; ParseError when backend=exact gets a non-rational."""
        if self.dft:
            return dft_root(self.n)
        return self.field.parse(self.q)
