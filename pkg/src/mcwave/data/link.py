from dataclasses import dataclass
from typing      import Self

@dataclass(frozen=True)
class LinkState:
    """
    Represents the state of one access point to user link during a frame.

    A blocked link contributes no signal. The time offset is measured in symbol periods,
    the frequency offset in fractions of the subcarrier spacing ``1 / (M T_s)``.
    """
    blocked: bool
    """bool: True if the line of sight is blocked, i.e. the link gain is zero."""

    tau: float
    """float: The effective time offset in symbol periods."""

    nu: float
    """float: The effective carrier frequency offset in subcarrier spacings."""

    @property
    def gain(self) -> float:
        """
        Gets the Bernoulli link gain.

        Returns
        -------
        float
            0.0 for a blocked link, 1.0 otherwise.
        """
        return 0.0 if self.blocked else 1.0

    def doppler_per_sample(self, m: int) -> float:
        """
        Gets the frequency offset in cycles per symbol period.

        Parameters
        ----------
        m : int
            The number of subcarriers defining the subcarrier spacing.

        Returns
        -------
        float
            ``nu / m``.
        """
        return self.nu / m

    @classmethod
    def parse(cls, data: tuple) -> Self:
        """
        Parses a ``(blocked, tau, nu)`` tuple, as written by `as_serializable`.

        Parameters
        ----------
        data : tuple
            The serialized link values.

        Returns
        -------
        LinkState
            An instance of the `LinkState` class populated with the parsed data.
        """
        blocked, tau, nu = data

        return cls(bool(blocked), float(tau), float(nu))

    def as_serializable(self) -> tuple[bool, float, float]:
        """
        Returns a tuple with JSON serializable values.

        Returns
        -------
        tuple[bool, float, float]
            The blockage flag, time offset and frequency offset.
        """
        return (self.blocked, self.tau, self.nu)

@dataclass(frozen=True)
class ChannelRealization:
    """Represents the joint state of all access point links during one frame."""
    links: tuple[LinkState, ...]
    """tuple[LinkState, ...]: One state per access point."""

    rng_seed: int | None = None
    """int | None: The frame seed the realization was drawn from, if known; replays the frame."""

    @property
    def blocked_count(self) -> int:
        """
        Gets the number of blocked links.

        Returns
        -------
        int
            The count of links whose gain is zero.
        """
        return sum(link.blocked for link in self.links)

    @property
    def all_blocked(self) -> bool:
        """
        Gets a value indicating whether no access point reaches the user.

        Returns
        -------
        bool
            True if every link is blocked.
        """
        return self.blocked_count == len(self.links)

    @classmethod
    def parse(cls, data: dict) -> Self:
        """
        Parses a dictionary written by `as_serializable`.

        Parameters
        ----------
        data : dict
            The serialized realization.

        Returns
        -------
        ChannelRealization
            An instance of the `ChannelRealization` class populated with the parsed data.
        """
        return cls(
            links=tuple(LinkState.parse(link) for link in data['links']),
            rng_seed=data.get('rng_seed')
        )

    def as_serializable(self) -> dict:
        """
        Returns a dictionary with JSON serializable values.

        Returns
        -------
        dict
            The link tuples and the seed.
        """
        return {
            'links':    [link.as_serializable() for link in self.links],
            'rng_seed': self.rng_seed
        }
