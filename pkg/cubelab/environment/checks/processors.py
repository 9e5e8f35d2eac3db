import abc


class CheckSkipped(Exception):
    """Raised by a processor whose check does not apply to the instance at hand."""


class CheckProcessor(abc.ABC):
    def __init__(self, name=None):
        self.name = name

    def process(self, instance):
        # method to expose the check on an instance
        return self._process(instance)

    @abc.abstractmethod
    def _process(self, instance):
        """
        A method to run the check on an instance.

        Parameters
        ----------
        instance : Instance
            the context, base object and relations under test

        Returns
        -------
        CheckReport
            verdict of the check with its witness and trace

        Raises
        ------
        CheckSkipped
            if the check does not apply to the instance
        """
        raise NotImplementedError
