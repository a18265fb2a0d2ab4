"""
Rich console output for the command-line front end.

Human-readable output goes to stderr so that JSON and CSV written to stdout
stay machine-readable.
"""

from typing import Any, Dict

from rich.box import ROUNDED
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeRemainingColumn
from rich.table import Table
from rich.text import Text

from ..core.validation import ValidationReport

console = Console(stderr=True)


def print_banner(subtitle: str = "Differentiable distances between convex polytopes") -> None:
    """Print application banner."""
    banner_text = Text()
    banner_text.append("SMOOTHDIST", style="bold white on blue")
    banner_text.append(f"\n{subtitle}", style="italic cyan")
    console.print(Panel(banner_text, border_style="blue", padding=(1, 2)))


def create_progress(transient: bool = False) -> Progress:
    """Progress bar for long loops (benchmark pairs, sweep samples)."""
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
        TimeRemainingColumn(),
        console=console,
        transient=transient,
    )


def print_success(message: str) -> None:
    """Print a success message."""
    console.print(f"[bold green]✓[/bold green] {message}")


def print_error(message: str) -> None:
    """Print an error message."""
    console.print(f"[bold red]✗[/bold red] {message}")


def print_warning(message: str) -> None:
    """Print a warning message."""
    console.print(f"[bold yellow]⚠[/bold yellow] {message}")


def print_info(message: str) -> None:
    """Print an info message."""
    console.print(f"[bold blue]ℹ[/bold blue] {message}")


def display_key_value_table(
        data: Dict[str, Any],
        title: str = "Information",
        key_style: str = "cyan",
        value_style: str = "white",
) -> None:
    """
    Display key-value pairs in a formatted table.

    Args:
        data: Key-value data
        title: Table title
        key_style: Style for keys
        value_style: Style for values
    """
    table = Table(title=f"[bold blue]{title}[/bold blue]", box=ROUNDED)
    table.add_column("Property", style=key_style, min_width=20)
    table.add_column("Value", style=value_style, min_width=30)

    for key, value in data.items():
        if isinstance(value, bool):
            display_value = "✓ Yes" if value else "✗ No"
            style = "green" if value else "red"
            table.add_row(key, f"[{style}]{display_value}[/{style}]")
        elif isinstance(value, float):
            table.add_row(key, f"{value:.6g}")
        elif isinstance(value, (list, tuple)):
            table.add_row(key, ", ".join(str(v) for v in value))
        elif value is None:
            table.add_row(key, "[dim]Not set[/dim]")
        else:
            table.add_row(key, str(value))

    console.print(table)


def display_report(report: ValidationReport) -> None:
    """Render a validation report as a pass/fail table."""
    table = Table(title=f"[bold blue]{report.title}[/bold blue]", box=ROUNDED)
    table.add_column("Check", style="cyan")
    table.add_column("Result")
    table.add_column("Failures", justify="right")
    table.add_column("Detail", style="dim")
    for check in report.checks:
        result = "[green]PASS[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(check.name, result, str(check.failures), check.detail)
    console.print(table)


def set_colors(enabled: bool) -> None:
    """Switch colored output on or off for the shared console."""
    console.no_color = not enabled
