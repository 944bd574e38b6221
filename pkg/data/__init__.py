from data.data_store import DataStore, file_hash
from data.sample_data import generate_corpus

__all__ = ['DataStore', 'file_hash', 'generate_corpus']
